#pragma once

#include "mps/net/udp.hpp"
#include "mps/rpc/signer.hpp"

#include <filesystem>

namespace mps::rpc {

/// Everything `mps signerd` needs: the daemon configuration plus the UDP
/// endpoint to listen on and static routes for outgoing Interests.
struct SignerdConfig
{
  SignerConfig signer;
  net::UdpEndpoint listen;
  std::vector<std::pair<Name, net::UdpEndpoint>> routes;
};

/// Parses a signer.toml document. Relative file paths (key, schema_dir,
/// signers, coordinator.anchors) resolve against `base_dir`. The hook is
/// "auto-approve", "auto-deny", or a shell command that receives the unsigned
/// packet on stdin and approves with exit status 0; a command hook runs on a
/// worker thread. Throws mps::Error naming the offending key.
SignerdConfig parse_signerd_config(std::string_view toml_text, const std::filesystem::path& base_dir);

/// Reads and parses a signer.toml file; paths resolve against its directory.
SignerdConfig load_signerd_config(const std::filesystem::path& path);

} // namespace mps::rpc

#include "mps/schema/keyfile.hpp"
#include "mps/bytes.hpp"
#include "mps/error.hpp"

#include <fstream>
#include <sstream>

namespace mps::schema {

crypto::BlsKeyPair
load_key_file(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw Error("cannot read key file " + path.string());
  std::stringstream text;
  text << in.rdbuf();
  std::string hex = text.str();
  auto first = hex.find_first_not_of(" \t\r\n");
  auto last = hex.find_last_not_of(" \t\r\n");
  hex = first == std::string::npos ? "" : hex.substr(first, last - first + 1);

  Buffer seed;
  try {
    seed = from_hex(hex);
  }
  catch (const Error&) {
    throw Error(path.string() + ": key file is not hex");
  }
  if (seed.size() != KeySeedSize)
    throw Error(path.string() + ": key seed must be " + std::to_string(KeySeedSize) + " bytes, got " +
                std::to_string(seed.size()));
  return crypto::bls_keygen(seed);
}

crypto::BlsKeyPair
create_key_file(const std::filesystem::path& path, crypto::RandomSource& rng)
{
  if (std::filesystem::exists(path))
    throw Error(path.string() + " already exists");
  auto seed = rng.bytes(KeySeedSize);
  {
    std::ofstream out(path);
    if (!out)
      throw Error("cannot write " + path.string());
    out << to_hex(seed) << '\n';
  }
  std::filesystem::permissions(path, std::filesystem::perms::owner_read | std::filesystem::perms::owner_write);
  return crypto::bls_keygen(seed);
}

} // namespace mps::schema

#include "mps/rpc/signer_config.hpp"
#include "mps/schema/keyfile.hpp"

#include <toml.hpp>

#include <fstream>
#include <sstream>

namespace mps::rpc {

namespace {

class Reader
{
public:
  Reader(const toml::table& doc, std::filesystem::path base_dir)
    : m_doc(doc)
    , m_base(std::move(base_dir))
  {}

  std::string require_string(std::string_view key) const
  {
    auto v = at(key).value<std::string>();
    if (!v)
      throw Error("signer config: missing string '" + std::string(key) + "'");
    return *v;
  }

  std::optional<std::string> string(std::string_view key) const { return at(key).value<std::string>(); }

  std::filesystem::path require_path(std::string_view key) const { return resolve(require_string(key)); }

  std::filesystem::path resolve(const std::filesystem::path& p) const { return p.is_absolute() ? p : m_base / p; }

  template<typename T>
  void read_uint(std::string_view key, T& target) const
  {
    auto node = at(key);
    if (!node)
      return;
    auto v = node.value<int64_t>();
    if (!v || *v < 0)
      throw Error("signer config: '" + std::string(key) + "' must be a non-negative integer");
    target = static_cast<T>(*v);
  }

  toml::node_view<const toml::node> at(std::string_view dotted) const { return m_doc.at_path(dotted); }

private:
  const toml::table& m_doc;
  std::filesystem::path m_base;
};

DecisionHook
make_hook(const std::string& hook)
{
  if (hook == "auto-approve")
    return auto_approve();
  if (hook == "auto-deny")
    return auto_deny();
  if (hook.empty())
    throw Error("signer config: empty hook");
  return external_command(hook);
}

} // namespace

SignerdConfig
parse_signerd_config(std::string_view toml_text, const std::filesystem::path& base_dir)
{
  toml::table doc;
  try {
    doc = toml::parse(toml_text);
  }
  catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << "signer config: " << e.description() << " at line " << e.source().begin.line;
    throw Error(os.str());
  }
  Reader r(doc, base_dir);

  SigningIdentity identity{Name(r.require_string("key_name")), schema::load_key_file(r.require_path("key"))};
  if (!schema::is_key_name(identity.key_name))
    throw Error("signer config: key_name must look like /<identity>/KEY/<id>");
  Name prefix = r.string("prefix") ? Name(*r.string("prefix")) : identity.identity();

  auto anchors = schema::load_known_signers(r.require_path("coordinator.anchors")).certificates();
  auto cs = schema::CoordinatorSchema::make(prefix, r.require_string("coordinator.request"),
                                            r.require_string("coordinator.key"), std::move(anchors));
  auto policy = schema::load_policy_dir(r.require_path("schema_dir"));

  SignerdConfig cfg{SignerConfig(std::move(identity), prefix, std::move(cs), std::move(policy)), {}, {}};
  auto& s = cfg.signer;
  if (auto p = r.string("publish_prefix"))
    s.publish_prefix = Name(*p);
  if (auto p = r.string("signers"))
    s.keychain = schema::load_known_signers(r.resolve(*p));
  auto hook = r.string("hook").value_or("auto-approve");
  s.hook = make_hook(hook);
  s.threaded_hook = hook != "auto-approve" && hook != "auto-deny";
  r.read_uint("eta_ms", s.eta_ms);
  r.read_uint("result_lifetime_ms", s.result_lifetime_ms);
  r.read_uint("max_sessions", s.max_sessions);
  r.read_uint("nonce.grace_window_ms", s.nonce.grace_window_ms);
  r.read_uint("nonce.bits", s.nonce.bits);
  r.read_uint("nonce.hashes", s.nonce.hashes);

  cfg.listen = net::UdpEndpoint::parse(r.require_string("transport.listen"));
  if (auto routes = r.at("transport.routes").as_array()) {
    for (const auto& entry : *routes) {
      const auto* t = entry.as_table();
      auto pfx = t ? (*t)["prefix"].value<std::string>() : std::nullopt;
      auto to = t ? (*t)["to"].value<std::string>() : std::nullopt;
      if (!pfx || !to)
        throw Error("signer config: every transport route needs 'prefix' and 'to'");
      cfg.routes.emplace_back(Name(*pfx), net::UdpEndpoint::parse(*to));
    }
  }
  return cfg;
}

SignerdConfig
load_signerd_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw Error("cannot read " + path.string());
  std::stringstream text;
  text << in.rdbuf();
  return parse_signerd_config(text.str(), path.parent_path());
}

} // namespace mps::rpc

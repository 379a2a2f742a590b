// mps: command-line front end for keys, certificates, schemas, signing
// jobs, the signer daemon, verification and benchmarks.

#include "mps/bench/bench.hpp"
#include "mps/net/udp.hpp"
#include "mps/rpc/coordinator.hpp"
#include "mps/rpc/signer_config.hpp"
#include "mps/schema/keyfile.hpp"
#include "mps/verify/verifier.hpp"

#include "CLI11.hpp"

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace mps;

namespace {

/// Exit status for usage and I/O errors; 1 means "checked and rejected".
constexpr int ExitError = 2;

Buffer
read_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot read " + path.string());
  return Buffer(std::istreambuf_iterator<char>(in), {});
}

void
write_file(const std::filesystem::path& path, ByteSpan bytes, bool append = false)
{
  std::ofstream out(path, std::ios::binary | (append ? std::ios::app : std::ios::trunc));
  if (!out)
    throw Error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<Name>
split_names(const std::string& list)
{
  std::vector<Name> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty())
      out.emplace_back(item);
  }
  return out;
}

/// `--route /prefix=host:port`, repeatable.
void
add_routes(net::UdpFace& face, const std::vector<std::string>& routes)
{
  for (const auto& r : routes) {
    auto eq = r.find('=');
    if (eq == std::string::npos)
      throw Error("route must be <prefix>=<host:port>, got '" + r + "'");
    face.add_route(Name(r.substr(0, eq)), net::UdpEndpoint::parse(r.substr(eq + 1)));
  }
}

std::atomic<bool> g_stop{false};

void
on_signal(int)
{
  g_stop = true;
}

void
install_signal_handlers()
{
  struct sigaction sa = {};
  sa.sa_handler = on_signal; // no SA_RESTART: poll() returns EINTR and the loop re-checks g_stop
  sigemptyset(&sa.sa_mask);
  sigaction(SIGINT, &sa, nullptr);
  sigaction(SIGTERM, &sa, nullptr);
  // a hook command may exit without reading all of stdin; its exit status still decides
  std::signal(SIGPIPE, SIG_IGN);
}

// --- keygen / cert -----------------------------------------------------------

int
cmd_keygen(const std::filesystem::path& out)
{
  auto kp = schema::create_key_file(out, crypto::system_random());
  std::cout << to_hex(kp.pk.bytes()) << '\n';
  return 0;
}

struct CertOptions
{
  std::filesystem::path key;
  std::string key_name;
  std::filesystem::path issuer_key;
  std::string issuer_name;
  std::string route_prefix;
  std::filesystem::path out;
  bool append = false;
};

int
cmd_cert_issue(const CertOptions& o)
{
  auto subject = schema::load_key_file(o.key);
  Name key_name(o.key_name);
  if (!schema::is_key_name(key_name))
    throw Error("key name must look like /<identity>/KEY/<id>");
  bool self_signed = o.issuer_key.empty();
  auto issuer_sk = self_signed ? subject.sk : schema::load_key_file(o.issuer_key).sk;
  Name issuer = self_signed ? key_name : Name(o.issuer_name);
  if (!self_signed && !schema::is_key_name(issuer))
    throw Error("--issuer-name is required with --issuer-key");

  schema::CertificateFields fields{key_name, subject.pk, subject.pop, std::nullopt, std::nullopt};
  if (!o.route_prefix.empty())
    fields.route_prefix = Name(o.route_prefix);
  auto cert = schema::issue_certificate(fields, issuer, issuer_sk);
  write_file(o.out, encode_data(cert.packet), o.append);
  std::cout << key_name << " issued by " << issuer << '\n';
  return 0;
}

int
cmd_cert_list(const std::filesystem::path& file)
{
  auto certs = schema::decode_certificates(read_file(file));
  int bad = 0;
  for (const auto& c : certs) {
    bool pop_ok = crypto::pop_verify(c.pk, c.pop);
    bad += !pop_ok;
    std::cout << c.key_name << "  issuer=" << c.issuer() << "  route=" << c.routable_prefix()
              << "  pop=" << (pop_ok ? "ok" : "BAD") << '\n';
  }
  return bad ? 1 : 0;
}

// --- schema check ------------------------------------------------------------

int
cmd_schema_check(const std::filesystem::path& dir, const std::string& data_name, const std::string& signers)
{
  std::vector<std::string> warnings;
  auto policy = schema::load_policy_dir(dir, &warnings);
  for (const auto& w : warnings)
    std::cerr << "warning: " << w << '\n';
  std::cout << policy.rules.size() << " rule(s) loaded from " << dir.string() << '\n';
  if (data_name.empty())
    return 0;

  Name name(data_name);
  auto keys = split_names(signers);
  bool any_applies = false;
  for (const auto& rule : policy.rules) {
    if (!rule.applies_to(name))
      continue;
    any_applies = true;
    std::cout << (schema::rule_accepts(rule, keys) ? "accepts:  " : "rejects:  ") << schema::print_rule(rule) << '\n';
  }
  if (!any_applies)
    std::cout << "no rule applies to " << name << '\n';
  bool ok = schema::verify_signer_set(policy, name, keys);
  std::cout << (ok ? "SATISFIED" : "NOT SATISFIED") << '\n';
  return ok ? 0 : 1;
}

// --- coordinate --------------------------------------------------------------

struct CoordinateOptions
{
  std::filesystem::path data;
  std::string name;
  std::filesystem::path schema_dir;
  std::filesystem::path signers;
  std::filesystem::path key;
  std::string key_name;
  std::filesystem::path out;
  std::filesystem::path siginfo;
  std::string listen = "127.0.0.1:0";
  std::vector<std::string> routes;
  uint64_t freshness_ms = 0;
  uint64_t linger_ms = 0;
};

int
cmd_coordinate(const CoordinateOptions& o)
{
  auto policy = schema::load_policy_dir(o.schema_dir);
  auto known = schema::load_known_signers(o.signers);
  rpc::SigningIdentity identity{Name(o.key_name), schema::load_key_file(o.key)};

  net::UdpFace face(net::UdpEndpoint::parse(o.listen));
  add_routes(face, o.routes);
  rpc::Coordinator coordinator(face, identity, known, crypto::system_random());

  DataPacket data;
  data.name = Name(o.name);
  data.content = read_file(o.data);
  if (o.freshness_ms)
    data.freshness_ms = o.freshness_ms;

  std::cerr << "coordinator " << coordinator.prefix() << " listening on port " << face.local_port() << '\n';
  try {
    auto r = coordinator.sign(std::move(data), policy);
    write_file(o.out, encode_data(r.signed_data));
    write_file(o.siginfo, encode_data(r.siginfo));
    for (const auto& a : r.attempts)
      std::cerr << "  " << a.signer_key << ": " << rpc::to_string(a.outcome) << " (" << a.rtts << " RTT)\n";
    std::cout << "signed " << r.signed_data.name << " with " << r.signers.size() << " signer(s); SigInfo "
              << r.siginfo.name << std::endl; // flushed: a caller may be waiting while we linger
  }
  catch (const rpc::JobFailed& e) {
    for (const auto& a : coordinator.last_attempts())
      std::cerr << "  " << a.signer_key << ": " << rpc::to_string(a.outcome) << '\n';
    std::cerr << "mps: " << e.what() << '\n';
    return 1;
  }

  if (o.linger_ms) {
    // keep answering SigInfo fetches for a while
    install_signal_handlers();
    auto until = face.now_ms() + o.linger_ms;
    face.schedule(o.linger_ms, [] {});
    face.process_events([&] { return g_stop.load() || face.now_ms() >= until; });
  }
  return 0;
}

// --- signerd -----------------------------------------------------------------

int
cmd_signerd(const std::filesystem::path& config_path)
{
  auto cfg = rpc::load_signerd_config(config_path);
  install_signal_handlers();
  net::UdpFace face(cfg.listen);
  for (const auto& [prefix, ep] : cfg.routes)
    face.add_route(prefix, ep);
  rpc::SignerDaemon daemon(face, cfg.signer, crypto::system_random());
  std::cerr << "signerd " << cfg.signer.identity.key_name << " serving " << cfg.signer.prefix << " on port "
            << face.local_port() << '\n';

  face.process_events([] { return g_stop.load(); });

  const auto& s = daemon.stats();
  std::cerr << "requests=" << s.requests << " accepted=" << s.accepted << " rejected=" << s.rejected
            << " busy=" << s.busy << " stale=" << s.dropped_stale << " replayed=" << s.dropped_replayed
            << " malformed=" << s.dropped_malformed << " signed=" << s.signed_pieces << " denied=" << s.denied
            << '\n';
  return 0;
}

// --- verify ------------------------------------------------------------------

struct VerifyOptions
{
  std::filesystem::path data;
  std::filesystem::path schema_dir;
  std::filesystem::path signers;
  std::filesystem::path siginfo;
  bool fetch = false;
  std::string listen = "127.0.0.1:0";
  std::vector<std::string> routes;
};

int
cmd_verify(const VerifyOptions& o)
{
  auto policy = schema::load_policy_dir(o.schema_dir);
  auto known = schema::load_known_signers(o.signers);
  auto data = decode_data(read_file(o.data));

  verify::Verdict verdict;
  if (o.fetch) {
    net::UdpFace face(net::UdpEndpoint::parse(o.listen));
    add_routes(face, o.routes);
    try {
      verdict = verify::verify_multisigned(data, policy, known, face);
    }
    catch (const verify::FetchTimeout& e) {
      std::cerr << "mps: " << e.what() << '\n';
      return ExitError;
    }
  }
  else {
    verdict = verify::verify_with_siginfo(data, decode_data(read_file(o.siginfo)), policy, known);
  }

  if (verdict.valid()) {
    std::cout << "VALID " << data.name << '\n';
    for (const auto& s : verdict.signers)
      std::cout << "  signer " << s << '\n';
    return 0;
  }
  std::cout << "INVALID " << data.name << ": " << verify::to_string(verdict.failure);
  if (!verdict.detail.empty())
    std::cout << " (" << verdict.detail << ")";
  std::cout << '\n';
  return 1;
}

// --- bench -------------------------------------------------------------------

int
cmd_bench(const std::string& which, const std::filesystem::path& out, size_t iterations,
          const std::filesystem::path& fabric)
{
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.empty()) {
    file.open(out);
    if (!file)
      throw Error("cannot write " + out.string());
    os = &file;
  }
  if (which == "crypto") {
    bench::CryptoBenchConfig cfg;
    cfg.iterations = iterations;
    bench::write_csv(*os, bench::bench_crypto(cfg));
  }
  else {
    auto rows = fabric.empty() ? bench::bench_rtt() : bench::bench_rtt(net::load_fabric_config(fabric));
    bench::write_csv(*os, rows);
  }
  return 0;
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"Multiparty signing over named data: keys, schemas, signing jobs, verification"};
  app.require_subcommand(1);
  std::function<int()> action;

  // keygen
  std::filesystem::path keygen_out;
  auto* keygen = app.add_subcommand("keygen", "Create a *.blskey file with a random seed; prints the public key");
  keygen->add_option("--out", keygen_out, "Key file to create")->required();
  keygen->callback([&] { action = [&] { return cmd_keygen(keygen_out); }; });

  // cert issue | list
  CertOptions cert_opts;
  std::filesystem::path cert_list_file;
  auto* cert = app.add_subcommand("cert", "Issue or inspect certificates");
  cert->require_subcommand(1);
  auto* issue = cert->add_subcommand("issue", "Issue a certificate (self-signed without --issuer-key)");
  issue->add_option("--key", cert_opts.key, "Subject key file")->required();
  issue->add_option("--key-name", cert_opts.key_name, "Subject key name /<identity>/KEY/<id>")->required();
  issue->add_option("--issuer-key", cert_opts.issuer_key, "Issuer key file");
  issue->add_option("--issuer-name", cert_opts.issuer_name, "Issuer key name");
  issue->add_option("--route-prefix", cert_opts.route_prefix, "Prefix where the subject answers requests");
  issue->add_option("--out", cert_opts.out, "Certificate file (signers.tlv to build a store)")->required();
  issue->add_flag("--append", cert_opts.append, "Append to --out instead of overwriting");
  issue->callback([&] { action = [&] { return cmd_cert_issue(cert_opts); }; });
  auto* list = cert->add_subcommand("list", "List certificates and check their proofs of possession");
  list->add_option("file", cert_list_file, "signers.tlv or certificate file")->required();
  list->callback([&] { action = [&] { return cmd_cert_list(cert_list_file); }; });

  // schema check
  std::filesystem::path schema_dir;
  std::string check_name, check_signers;
  auto* schema_cmd = app.add_subcommand("schema", "Multisignature schema tools");
  schema_cmd->require_subcommand(1);
  auto* check = schema_cmd->add_subcommand("check", "Parse a schema directory; optionally test a signer set");
  check->add_option("dir", schema_dir, "Directory of *.schema files")->required();
  check->add_option("--data-name", check_name, "Data name to test");
  check->add_option("--signers", check_signers, "Comma-separated signer key names");
  check->callback([&] { action = [&] { return cmd_schema_check(schema_dir, check_name, check_signers); }; });

  // coordinate
  CoordinateOptions co;
  auto* coord = app.add_subcommand("coordinate", "Collect signatures for a Data packet over UDP");
  coord->add_option("--data", co.data, "File with the packet content")->required();
  coord->add_option("--name", co.name, "Data name")->required();
  coord->add_option("--schema", co.schema_dir, "Directory of *.schema files")->required();
  coord->add_option("--signers", co.signers, "signers.tlv with signer certificates")->required();
  coord->add_option("--key", co.key, "Coordinator key file")->required();
  coord->add_option("--key-name", co.key_name, "Coordinator key name")->required();
  coord->add_option("--out", co.out, "Signed packet output")->required();
  coord->add_option("--siginfo", co.siginfo, "SigInfo packet output")->required();
  coord->add_option("--listen", co.listen, "UDP host:port to bind")->capture_default_str();
  coord->add_option("--route", co.routes, "Static route <prefix>=<host:port> (repeatable)");
  coord->add_option("--freshness-ms", co.freshness_ms, "FreshnessPeriod of the signed packet");
  coord->add_option("--linger-ms", co.linger_ms, "Keep serving the SigInfo this long after signing");
  coord->callback([&] { action = [&] { return cmd_coordinate(co); }; });

  // signerd
  std::filesystem::path signerd_config;
  auto* signerd = app.add_subcommand("signerd", "Run a signer daemon over UDP until interrupted");
  signerd->add_option("--config", signerd_config, "signer.toml")->required();
  signerd->callback([&] { action = [&] { return cmd_signerd(signerd_config); }; });

  // verify
  VerifyOptions vo;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a multiparty-signed packet");
  verify_cmd->add_option("--data", vo.data, "Signed packet")->required();
  verify_cmd->add_option("--schema", vo.schema_dir, "Directory of *.schema files")->required();
  verify_cmd->add_option("--signers", vo.signers, "signers.tlv with signer and coordinator certificates")
    ->required();
  auto* siginfo_opt = verify_cmd->add_option("--siginfo", vo.siginfo, "SigInfo packet file (offline mode)");
  auto* fetch_opt = verify_cmd->add_flag("--fetch", vo.fetch, "Fetch the SigInfo by its key locator over UDP");
  siginfo_opt->excludes(fetch_opt);
  verify_cmd->add_option("--listen", vo.listen, "UDP host:port to bind (with --fetch)")->capture_default_str();
  verify_cmd->add_option("--route", vo.routes, "Static route <prefix>=<host:port> (with --fetch)");
  verify_cmd->callback([&] {
    if (!vo.fetch && vo.siginfo.empty())
      throw CLI::ValidationError("verify", "give --siginfo <file> or --fetch");
    action = [&] { return cmd_verify(vo); };
  });

  // bench
  std::string bench_which;
  std::filesystem::path bench_out, bench_fabric;
  size_t bench_iterations = bench::CryptoBenchConfig{}.iterations;
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark and write CSV");
  bench_cmd->add_option("kind", bench_which, "crypto or rtt")
    ->required()
    ->check(CLI::IsMember({"crypto", "rtt"}));
  bench_cmd->add_option("--out", bench_out, "CSV output (stdout if omitted)");
  bench_cmd->add_option("--iterations", bench_iterations, "Iterations per crypto measurement")
    ->capture_default_str();
  bench_cmd->add_option("--fabric", bench_fabric, "Fabric TOML for the rtt benchmark");
  bench_cmd->callback(
    [&] { action = [&] { return cmd_bench(bench_which, bench_out, bench_iterations, bench_fabric); }; });

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : ExitError;
  }
  try {
    return action();
  }
  catch (const std::exception& e) {
    std::cerr << "mps: " << e.what() << '\n';
    return ExitError;
  }
}

#include "cayley/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cayley/certificate.hpp"
#include "cayley/tz.hpp"
#include "cayley/zemor.hpp"

namespace cayley {

namespace {

using nlohmann::json;

json element_json(const FieldElement& e) { return json(e.coeffs()); }

json matrix_json(const Mat2& m) {
  return json::array({json::array({element_json(m.a()), element_json(m.b())}),
                      json::array({element_json(m.c()), element_json(m.d())})});
}

json field_json(const SpecPtr& spec) {
  json f;
  f["p"] = spec->p();
  f["k"] = spec->k();
  f["mod"] = spec->modulus().coeffs();
  return f;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::InvalidArgument, "cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trimmed(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

Message parse_message_text(const std::string& text) {
  std::string body = trimmed(text);
  if (body.empty()) return Message();
  if (body.find('^') != std::string::npos) return Message::parse_rle(body);
  return Message::parse_raw(body);
}

struct MessageInput {
  std::string inline_text;
  std::string file;
  bool inline_set = false;

  Message load() const {
    if (!file.empty()) return parse_message_text(read_file(file));
    return parse_message_text(inline_text);
  }
  bool present() const { return inline_set || !file.empty(); }
};

FieldElement element_from_json_value(const SpecPtr& spec, const json& j) {
  if (j.is_string()) return spec->parse_element(j.get<std::string>());
  if (j.is_number_unsigned() || j.is_number_integer()) return spec->scalar(j.get<u64>());
  if (j.is_array()) {
    std::vector<u64> cs;
    for (const auto& v : j) cs.push_back(v.get<u64>());
    return spec->element(std::move(cs));
  }
  raise(ErrorCode::ParseError, "element must be a string, number or coefficient array");
}

struct MatrixFile {
  Mat2 matrix;
  std::optional<std::string> field_text;
  std::optional<std::string> alpha_text;
  std::optional<std::string> beta_text;
};

// Accepts either a bare 2x2 array of coefficient arrays or an object with
// "matrix" plus optional "field" / "alpha" / "beta" keys.
MatrixFile load_matrix_file(const std::string& path, const SpecPtr& spec_hint) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, std::string("bad matrix JSON: ") + e.what());
  }
  MatrixFile out{Mat2(), std::nullopt, std::nullopt, std::nullopt};
  const json* mat = &j;
  SpecPtr spec = spec_hint;
  if (j.is_object()) {
    if (j.contains("field")) {
      out.field_text = j["field"].get<std::string>();
      spec = FieldSpec::parse(*out.field_text);
    }
    if (j.contains("alpha")) out.alpha_text = j["alpha"].is_string() ? j["alpha"].get<std::string>() : j["alpha"].dump();
    if (j.contains("beta")) out.beta_text = j["beta"].is_string() ? j["beta"].get<std::string>() : j["beta"].dump();
    if (!j.contains("matrix")) raise(ErrorCode::ParseError, "matrix file object needs a \"matrix\" key");
    mat = &j["matrix"];
  }
  if (!spec) raise(ErrorCode::InvalidArgument, "no field given for the matrix file");
  if (!mat->is_array() || mat->size() != 2)
    raise(ErrorCode::ParseError, "matrix must be a 2x2 nested array");
  out.matrix = Mat2(element_from_json_value(spec, (*mat)[0][0]), element_from_json_value(spec, (*mat)[0][1]),
                    element_from_json_value(spec, (*mat)[1][0]), element_from_json_value(spec, (*mat)[1][1]));
  return out;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

struct CommonOpts {
  std::string field;
  std::string alpha;
  std::string beta;
  u64 seed = 0;
  unsigned workers = 1;
};

void add_common(CLI::App* cmd, CommonOpts& c, bool need_field = true) {
  auto* f = cmd->add_option("--field", c.field, "field spec, e.g. p=7919 or p=3;k=12;mod=[...]");
  if (need_field) f->required();
  cmd->add_option("--alpha", c.alpha, "alpha element (integer, [coeffs] or z-notation)");
  cmd->add_option("--beta", c.beta, "beta element");
  cmd->add_option("--seed", c.seed, "seed for randomized sampling (none of the verbs draw today)");
  cmd->add_option("--workers", c.workers, "concurrency width for the scan verbs")->default_val(1u);
}

ZemorParams zemor_params(const CommonOpts& c) {
  SpecPtr spec = FieldSpec::parse(c.field);
  if (c.alpha.empty() || c.beta.empty())
    raise(ErrorCode::UsageError, "this verb needs --alpha and --beta");
  return ZemorParams::make(spec, spec->parse_element(c.alpha), spec->parse_element(c.beta));
}

TZParams tz_params(const CommonOpts& c) {
  SpecPtr spec = FieldSpec::parse(c.field);
  std::optional<FieldElement> a, b;
  if (!c.alpha.empty()) a = spec->parse_element(c.alpha);
  if (!c.beta.empty()) b = spec->parse_element(c.beta);
  return TZParams::make(spec, a, b);
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cayley hash toolkit: generalized Zemor / Tillich-Zemor hashing and collision engineering"};
  app.require_subcommand(1);

  CommonOpts hash_o, tzhash_o, collide_o, triang_o, search_o, gamma_o, dext_o, euclid_o, combine_o,
      period_o, tzcollide_o;
  MessageInput hash_msg, tzhash_msg, collide_msg, triang_msg, gamma_msg, dext_msg, euclid_msg;

  auto add_msg = [](CLI::App* cmd, MessageInput& m, bool required) {
    auto* a = cmd->add_option("--msg", m.inline_text, "message (RLE like 0^{2}1^{3}, or raw 0/1)");
    a->expected(1)->each([&m](const std::string&) { m.inline_set = true; });
    auto* b = cmd->add_option("--msg-file", m.file, "file holding the message text");
    if (required) {
      a->excludes(b);
    }
  };

  auto* hash_cmd = app.add_subcommand("hash", "generalized Zemor hash of a message");
  add_common(hash_cmd, hash_o);
  add_msg(hash_cmd, hash_msg, true);

  auto* tzhash_cmd = app.add_subcommand("tz-hash", "generalized Tillich-Zemor hash of a message");
  add_common(tzhash_cmd, tzhash_o);
  add_msg(tzhash_cmd, tzhash_msg, true);

  auto* collide_cmd = app.add_subcommand("collide-diag", "two-word collision via diagonal extensions");
  add_common(collide_cmd, collide_o);
  add_msg(collide_cmd, collide_msg, true);
  i64 c_m1 = 0, c_n1 = 0, c_m2 = 0, c_n2 = 0;
  collide_cmd->add_option("--m1", c_m1)->required();
  collide_cmd->add_option("--n1", c_n1)->required();
  collide_cmd->add_option("--m2", c_m2)->required();
  collide_cmd->add_option("--n2", c_n2)->required();

  auto* triang_cmd = app.add_subcommand("extend-triang", "extend a hash to upper-triangular form");
  add_common(triang_cmd, triang_o);
  add_msg(triang_cmd, triang_msg, false);
  std::string triang_matrix_file;
  triang_cmd->add_option("--matrix-file", triang_matrix_file, "JSON matrix input");
  i64 triang_m_choice = -1;
  triang_cmd->add_option("--m-choice", triang_m_choice, "override the extension exponent m");

  auto* search_cmd = app.add_subcommand("search-delta", "bounded diagonal/triangular witness scan");
  add_common(search_cmd, search_o);
  std::string search_kind = "diag";
  search_cmd->add_option("--kind", search_kind, "diag or triang")->check(CLI::IsMember({"diag", "triang"}));
  u64 search_delta = 0;
  search_cmd->add_option("--delta", search_delta, "scan bound")->required();

  auto* gamma_cmd = app.add_subcommand("gamma", "triangularizability criterion element");
  add_common(gamma_cmd, gamma_o);
  add_msg(gamma_cmd, gamma_msg, false);
  std::string gamma_matrix_file;
  gamma_cmd->add_option("--matrix-file", gamma_matrix_file, "JSON matrix input");

  auto* dext_cmd = app.add_subcommand("double-ext", "two-step extension solvability over F_p x F_p");
  add_common(dext_cmd, dext_o);
  add_msg(dext_cmd, dext_msg, false);
  std::string dext_matrix_file;
  dext_cmd->add_option("--matrix-file", dext_matrix_file, "JSON matrix input");

  auto* euclid_cmd = app.add_subcommand("euclid", "Euclidean-algorithm factorization (alpha = beta = 1)");
  add_common(euclid_cmd, euclid_o);
  add_msg(euclid_cmd, euclid_msg, false);
  std::string euclid_matrix_file;
  euclid_cmd->add_option("--matrix-file", euclid_matrix_file, "JSON matrix input");

  auto* combine_cmd = app.add_subcommand("combine", "combine triangular hashes into an identity word");
  add_common(combine_cmd, combine_o);
  std::string combine_items;
  combine_cmd->add_option("--items", combine_items, "JSON array of {\"z_rle\": ...} items")->required();

  auto* period_cmd = app.add_subcommand("tz-period", "order of the Tillich-Zemor generator matrix");
  add_common(period_cmd, period_o);
  std::string period_point;
  period_cmd->add_option("--point", period_point, "evaluation point (default: image of x)");

  auto* tzcollide_cmd = app.add_subcommand("tz-collide", "search for 0^n / 1^m power collisions");
  add_common(tzcollide_cmd, tzcollide_o);
  u64 tzc_bound = 0;
  tzcollide_cmd->add_option("--bound", tzc_bound, "max exponent")->required();

  auto* malice_cmd = app.add_subcommand("malice", "scan for weak field-defining polynomials");
  u64 mal_p = 0, mal_d = 0, mal_bound = 0, mal_limit = 0;
  unsigned mal_workers = 1;
  malice_cmd->add_option("--p", mal_p, "prime")->required();
  malice_cmd->add_option("--d", mal_d, "polynomial degree")->required();
  malice_cmd->add_option("--order-bound", mal_bound, "keep fields with period <= bound")->required();
  malice_cmd->add_option("--scan-limit", mal_limit, "how many irreducibles to examine")->required();
  malice_cmd->add_option("--workers", mal_workers)->default_val(1u);

  auto* verify_cmd = app.add_subcommand("verify", "re-check a collision certificate file");
  std::string verify_path;
  verify_cmd->add_option("cert", verify_path, "certificate JSON file")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("cayley");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    err << app.help() << std::flush;
    return 0;
  } catch (const CLI::ParseError& e) {
    json j;
    j["error"] = "UsageError";
    j["detail"] = e.what();
    emit(out, j);
    return 2;
  }

  try {
    if (hash_cmd->parsed()) {
      ZemorParams params = zemor_params(hash_o);
      Mat2 h = zemor_hash(params, hash_msg.load());
      json j;
      j["field"] = field_json(params.spec);
      j["matrix"] = matrix_json(h);
      j["pretty"] = h.pretty();
      emit(out, j);
      return 0;
    }
    if (tzhash_cmd->parsed()) {
      TZParams params = tz_params(tzhash_o);
      Mat2 h = tz_hash(params, tzhash_msg.load());
      json j;
      j["field"] = field_json(params.spec);
      j["matrix"] = matrix_json(h);
      j["pretty"] = h.pretty();
      j["det"] = element_json(h.det());
      emit(out, j);
      return 0;
    }
    if (collide_cmd->parsed()) {
      ZemorParams params = zemor_params(collide_o);
      DiagCollisionResult res = diag_collision(params, collide_msg.load(), c_m1, c_n1, c_m2, c_n2);
      json j = json::parse(certificate_to_json(res.cert));
      j["details"] = {{"m1", c_m1},      {"n1", c_n1},      {"m2", c_m2},      {"n2", c_n2},
                      {"mt1", res.mt1},  {"nt1", res.nt1},  {"mt2", res.mt2},  {"nt2", res.nt2},
                      {"zero_run", res.zero_run}};
      emit(out, j);
      return 0;
    }
    if (triang_cmd->parsed()) {
      ZemorParams params = zemor_params(triang_o);
      Mat2 C = triang_matrix_file.empty() ? zemor_hash(params, triang_msg.load())
                                          : load_matrix_file(triang_matrix_file, params.spec).matrix;
      std::optional<u64> choice;
      if (triang_m_choice >= 0) choice = static_cast<u64>(triang_m_choice);
      TriangExtension ext = triangularize_ext(params, C, choice);
      json j;
      j["m"] = ext.m;
      j["n"] = ext.n;
      j["matrix"] = matrix_json(ext.result);
      j["pretty"] = ext.result.pretty();
      emit(out, j);
      return 0;
    }
    if (search_cmd->parsed()) {
      ZemorParams params = zemor_params(search_o);
      std::optional<ScanWitness> w = search_kind == "diag"
                                         ? bounded_diag_search(params, search_delta, search_o.workers)
                                         : bounded_triang_search(params, search_delta, search_o.workers);
      json j;
      j["kind"] = search_kind;
      j["delta"] = search_delta;
      if (w) {
        j["witness"] = {{"r", w->r}, {"s", w->s}, {"m", w->m}, {"n", w->n}};
        j["exhausted"] = false;
      } else {
        j["witness"] = nullptr;
        j["exhausted"] = true;
      }
      emit(out, j);
      return 0;
    }
    if (gamma_cmd->parsed()) {
      ZemorParams params = zemor_params(gamma_o);
      Mat2 C = gamma_matrix_file.empty() ? zemor_hash(params, gamma_msg.load())
                                          : load_matrix_file(gamma_matrix_file, params.spec).matrix;
      FieldElement g = gamma_of(params, C);
      bool fixed = frobenius(g, 1) == g;
      json j;
      j["gamma"] = element_json(g);
      j["pretty"] = g.pretty();
      j["frobenius_fixed"] = fixed;
      if (fixed && g.in_base_field()) {
        u64 m = g.residue();
        FieldElement denom = params.beta * (params.spec->scalar(m) * C.c() * params.alpha + C.d());
        if (!denom.is_zero()) {
          FieldElement n = -(C.c() / denom);
          if (n.in_base_field()) {
            j["m"] = m;
            j["n"] = n.residue();
          }
        }
      }
      emit(out, j);
      return 0;
    }
    if (dext_cmd->parsed()) {
      ZemorParams params = zemor_params(dext_o);
      Mat2 C = dext_matrix_file.empty() ? zemor_hash(params, dext_msg.load())
                                        : load_matrix_file(dext_matrix_file, params.spec).matrix;
      auto q = double_ext_coefficients(params, C);
      auto sol = double_ext_solve(params, C, dext_o.workers);
      json j;
      j["gamma"] = element_json(gamma_of(params, C));
      j["q"] = {{"q3", element_json(q[0])},
                {"q2", element_json(q[1])},
                {"q1", element_json(q[2])},
                {"q0", element_json(q[3])}};
      if (sol) {
        j["solution"] = {{"m1", sol->m1}, {"n1", sol->n1}, {"m2", sol->m2}, {"n2", sol->n2},
                         {"single", sol->single}};
      } else {
        j["solution"] = nullptr;
      }
      emit(out, j);
      return 0;
    }
    if (euclid_cmd->parsed()) {
      CommonOpts opts = euclid_o;
      if (opts.alpha.empty()) opts.alpha = "1";
      if (opts.beta.empty()) opts.beta = "1";
      ZemorParams params = zemor_params(opts);
      Mat2 X = euclid_matrix_file.empty() ? zemor_hash(params, euclid_msg.load())
                                          : load_matrix_file(euclid_matrix_file, params.spec).matrix;
      Message word = euclid_factor(params, X);
      json j;
      j["word_rle"] = word.emit_rle();
      j["bits"] = word.bit_length();
      j["verified"] = true;
      emit(out, j);
      return 0;
    }
    if (combine_cmd->parsed()) {
      ZemorParams params = zemor_params(combine_o);
      json items_json;
      try {
        items_json = json::parse(read_file(combine_items));
      } catch (const json::exception& e) {
        raise(ErrorCode::ParseError, std::string("bad items JSON: ") + e.what());
      }
      if (!items_json.is_array()) raise(ErrorCode::ParseError, "items file must hold a JSON array");
      std::vector<std::pair<Message, Mat2>> items;
      for (const auto& item : items_json) {
        Message z = Message::parse_rle(item.at("z_rle").get<std::string>());
        items.emplace_back(z, zemor_hash(params, z));
      }
      CombineResult res = combine_to_identity(params, items);
      json j = json::parse(certificate_to_json(res.cert));
      j["details"] = {{"exponents", res.exponents},
                      {"repeat", res.repeat},
                      {"combined_rle", res.combined.emit_rle()}};
      emit(out, j);
      return 0;
    }
    if (period_cmd->parsed()) {
      SpecPtr spec = FieldSpec::parse(period_o.field);
      std::optional<DensePoly> point;
      if (!period_point.empty()) {
        FieldElement pt = spec->parse_element(period_point);
        point = DensePoly(spec->p(), pt.coeffs());
      }
      u64 n = sequence_period(spec->p(), spec->k() == 1 ? DensePoly::x(spec->p()) : spec->modulus(), point);
      u64 pd = checked_pow(spec->p(), spec->k());
      json j;
      j["period"] = n;
      if (pd) {
        u128 bound = static_cast<u128>(pd) * (static_cast<u128>(pd) * pd - 1);
        j["bound"] = static_cast<u64>(bound > ~0ull ? 0 : bound);
        j["divides_bound"] = bound % n == 0;
      }
      emit(out, j);
      return 0;
    }
    if (tzcollide_cmd->parsed()) {
      TZParams params = tz_params(tzcollide_o);
      auto pair = power_collision_search(params, tzc_bound);
      json j;
      j["bound"] = tzc_bound;
      if (pair) {
        j["pair"] = {{"m", pair->first}, {"n", pair->second}};
        Message z1, z2;
        z1.append_run(1, pair->first);
        z2.append_run(0, pair->second);
        CollisionCertificate cert = make_certificate(CertKind::power_relation, params.spec, params.alpha,
                                                     params.beta, z1, z2, tz_hash(params, z1));
        j["certificate"] = json::parse(certificate_to_json(cert));
      } else {
        j["pair"] = nullptr;
      }
      emit(out, j);
      return 0;
    }
    if (malice_cmd->parsed()) {
      auto weak = malicious_generate(mal_p, mal_d, mal_bound, mal_limit, mal_workers);
      json arr = json::array();
      u64 pd = checked_pow(mal_p, mal_d);
      for (const auto& w : weak) {
        json e;
        e["q_coeffs"] = w.modulus.coeffs();
        e["d"] = mal_d;
        e["N"] = w.period;
        if (pd) {
          u128 bound = static_cast<u128>(pd) * (static_cast<u128>(pd) * pd - 1);
          e["group_order_bound"] = static_cast<u64>(bound > ~0ull ? 0 : bound);
        }
        arr.push_back(e);
      }
      json j;
      j["weak_fields"] = arr;
      emit(out, j);
      return 0;
    }
    if (verify_cmd->parsed()) {
      CollisionCertificate cert = certificate_from_json(read_file(verify_path));
      std::string why;
      bool ok = reverify(cert, &why);
      json j;
      j["verified"] = ok;
      if (!ok) j["reason"] = why;
      emit(out, j);
      return ok ? 0 : 3;
    }
  } catch (const Error& e) {
    json j;
    j["error"] = error_code_name(e.code());
    j["detail"] = e.what();
    emit(out, j);
    if (e.code() == ErrorCode::VerifyFailed) return 3;
    if (e.code() == ErrorCode::UsageError) return 2;
    return 1;
  }
  err << "no verb selected\n";
  return 2;
}

}  // namespace cayley

#include "cayley/certificate.hpp"

#include <json.hpp>

#include "cayley/tz.hpp"
#include "cayley/zemor.hpp"

namespace cayley {

const char* cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::diagonal_pair: return "diagonal-pair";
    case CertKind::identity_word: return "identity-word";
    case CertKind::power_relation: return "power-relation";
  }
  return "unknown";
}

CertKind cert_kind_from_name(const std::string& name) {
  if (name == "diagonal-pair") return CertKind::diagonal_pair;
  if (name == "identity-word") return CertKind::identity_word;
  if (name == "power-relation") return CertKind::power_relation;
  raise(ErrorCode::ParseError, "unknown certificate kind '" + name + "'");
}

namespace {

Mat2 hash_for_kind(const CollisionCertificate& cert, const Message& m) {
  if (cert.kind == CertKind::power_relation) {
    TZParams params = TZParams::make(cert.spec, cert.alpha, cert.beta);
    return tz_hash(params, m);
  }
  ZemorParams params = ZemorParams::make(cert.spec, cert.alpha, cert.beta);
  return zemor_hash(params, m);
}

}  // namespace

bool reverify(const CollisionCertificate& cert, std::string* why) {
  auto fail = [&](const char* reason) {
    if (why) *why = reason;
    return false;
  };
  if (cert.z1 == cert.z2) return fail("z1 and z2 are the same bit string");
  if (hash_for_kind(cert, cert.z1) != cert.hash) return fail("H(z1) does not match the stated hash");
  if (hash_for_kind(cert, cert.z2) != cert.hash) return fail("H(z2) does not match the stated hash");
  return true;
}

CollisionCertificate make_certificate(CertKind kind, SpecPtr spec, FieldElement alpha, FieldElement beta,
                                      Message z1, Message z2, const Mat2& expected_hash) {
  CollisionCertificate cert{kind,          std::move(spec), std::move(alpha), std::move(beta),
                            std::move(z1), std::move(z2),   expected_hash};
  std::string why;
  if (!reverify(cert, &why)) raise(ErrorCode::VerifyFailed, why);
  return cert;
}

namespace {

using nlohmann::json;

json element_json(const FieldElement& e) { return json(e.coeffs()); }

json matrix_json(const Mat2& m) {
  return json::array({json::array({element_json(m.a()), element_json(m.b())}),
                      json::array({element_json(m.c()), element_json(m.d())})});
}

FieldElement element_from_json(const SpecPtr& spec, const json& j) {
  if (!j.is_array()) raise(ErrorCode::ParseError, "element must be a coefficient array");
  std::vector<u64> cs;
  for (const auto& v : j) cs.push_back(v.get<u64>());
  return spec->element(std::move(cs));
}

Mat2 matrix_from_json(const SpecPtr& spec, const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || j[0].size() != 2 || !j[1].is_array() ||
      j[1].size() != 2)
    raise(ErrorCode::ParseError, "matrix must be a 2x2 nested array");
  return Mat2(element_from_json(spec, j[0][0]), element_from_json(spec, j[0][1]),
              element_from_json(spec, j[1][0]), element_from_json(spec, j[1][1]));
}

}  // namespace

std::string certificate_to_json(const CollisionCertificate& cert) {
  json j;
  j["kind"] = cert_kind_name(cert.kind);
  j["field"]["p"] = cert.spec->p();
  j["field"]["k"] = cert.spec->k();
  j["field"]["mod"] = cert.spec->modulus().coeffs();
  j["alpha"] = element_json(cert.alpha);
  j["beta"] = element_json(cert.beta);
  j["z1_rle"] = cert.z1.emit_rle();
  j["z2_rle"] = cert.z2.emit_rle();
  j["hash"] = matrix_json(cert.hash);
  j["verified"] = true;
  return j.dump(2) + "\n";
}

CollisionCertificate certificate_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, std::string("bad certificate JSON: ") + e.what());
  }
  try {
    CertKind kind = cert_kind_from_name(j.at("kind").get<std::string>());
    u64 p = j.at("field").at("p").get<u64>();
    u64 k = j.at("field").at("k").get<u64>();
    SpecPtr spec;
    if (k == 1) {
      spec = FieldSpec::make(p);
    } else {
      std::vector<u64> mod = j.at("field").at("mod").get<std::vector<u64>>();
      spec = FieldSpec::make(p, k, DensePoly(p, mod));
    }
    FieldElement alpha = element_from_json(spec, j.at("alpha"));
    FieldElement beta = element_from_json(spec, j.at("beta"));
    Message z1 = Message::parse_rle(j.at("z1_rle").get<std::string>());
    Message z2 = Message::parse_rle(j.at("z2_rle").get<std::string>());
    Mat2 hash = matrix_from_json(spec, j.at("hash"));
    return CollisionCertificate{kind, spec, alpha, beta, z1, z2, hash};
  } catch (const json::exception& e) {
    raise(ErrorCode::ParseError, std::string("certificate fields: ") + e.what());
  }
}

}  // namespace cayley

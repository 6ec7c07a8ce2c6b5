#pragma once

#include <string>

#include "cayley/mat2.hpp"
#include "cayley/message.hpp"

namespace cayley {

enum class CertKind { diagonal_pair, identity_word, power_relation };

const char* cert_kind_name(CertKind k);
CertKind cert_kind_from_name(const std::string& name);

/// Two distinct messages with equal hash under the hash family implied by the
/// kind (diagonal-pair and identity-word are Zemor; power-relation is
/// Tillich-Zemor). Construction re-verifies; a stored certificate can be
/// re-verified from its serialized form at any time.
struct CollisionCertificate {
  CertKind kind = CertKind::diagonal_pair;
  SpecPtr spec;
  FieldElement alpha;
  FieldElement beta;
  Message z1;
  Message z2;
  Mat2 hash;
};

/// Validating factory: recomputes both hashes, checks z1 != z2, throws
/// VerifyFailed on any mismatch.
CollisionCertificate make_certificate(CertKind kind, SpecPtr spec, FieldElement alpha, FieldElement beta,
                                      Message z1, Message z2, const Mat2& expected_hash);

/// Re-runs the checks of make_certificate; returns false instead of throwing.
bool reverify(const CollisionCertificate& cert, std::string* why = nullptr);

std::string certificate_to_json(const CollisionCertificate& cert);
CollisionCertificate certificate_from_json(const std::string& text);

}  // namespace cayley

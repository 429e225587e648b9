#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bsarr/bernstein.hpp"
#include "bsarr/charvariety.hpp"

namespace bsarr {

using Json = nlohmann::ordered_json;

/// Malformed or unexpected input. line/column are 1-based and set only for
/// JSON syntax errors.
struct InputError : std::runtime_error {
  InputError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
  std::size_t line = 0;
  std::size_t column = 0;
};

/// Parses JSON text; syntax errors become InputError with line and column.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
/// Two-space indented dump with a trailing newline.
std::string dump_json(const Json& j);

/// {"n": int, "forms": [["1", "-3/2"], ...]}. Coefficients are strings or
/// JSON integers; floats and unknown fields are rejected.
Arrangement arrangement_from_json(const Json& j);
Json to_json(const Arrangement& a);

Json to_json(const BFactored& b);
BFactored bfactored_from_json(const Json& j);

/// ISO 8601 UTC time from SOURCE_DATE_EPOCH, 1970-01-01T00:00:00Z when unset.
std::string build_timestamp();

struct CertificateFile {
  BernsteinCertificate certificate;
  std::string timestamp;
};

Json to_json(const CertificateFile& c);
/// The witness is reparsed from its text form; the recorded status is kept as
/// read (run verify_certificate to recheck).
CertificateFile certificate_from_json(const Json& j);

Json to_json(const GenericityCertificate& g);
Json to_json(const GroebnerReport& r);
Json to_json(const RegularityReport& r);
Json to_json(const AnnMembership& m);
Json to_json(const SlopeReport& r);
Json to_json(const ConormalReport& r);
Json to_json(const CkTable& t);

}  // namespace bsarr

#pragma once

// JSON interchange. Rationals are [num, den] pairs; integers are JSON numbers, or decimal
// strings when they do not fit in 64 bits. Output key order is sorted, so dumps are canonical.

#include "toric/bondal.hpp"

#include <json.hpp>

#include <string>

namespace toric::io {

using Json = nlohmann::json;

/// Input that does not match a schema. `where` is a field path such as "rays[2]" or
/// "line 4, column 7" for syntax errors.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& where, const std::string& what);
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

Json read_json_file(const std::string& path);
Json parse_json_text(const std::string& text);
/// Two-space indentation plus a trailing newline.
std::string dump(const Json& j);
void write_file(const std::string& path, const std::string& text);

Json to_json(const Int& x);
Json to_json(const Rat& x);
Json to_json(const RatVector& v);
Json to_json(const IntVector& v);
Json to_json(const IntMatrix& m);
Json to_json(const Fan& f);
Json to_json(const Cone& c);
Json to_json(const TDivisor& d);
Json to_json(const QDivisor& d);
Json to_json(const DivClass& c);
Json to_json(const FormalDivisor& d);
Json to_json(const GeneratingSystem& gs);
Json to_json(const GenerationCertificate& cert);
Json to_json(const BondalInstance& inst);
Json to_json(const FrobeniusDecomposition& fd);
Json to_json(const ThomsenCollection& tc);
Json to_json(const BondalReport& rep);

Int int_from_json(const Json& j, const std::string& where);
Rat rat_from_json(const Json& j, const std::string& where);
/// Parses "num/den" or "num".
Rat rat_from_string(const std::string& s);
/// Checks shape, primitivity, distinctness of rays and cone indices; not geometric validity.
Fan fan_from_json(const Json& j, const std::string& where = "");
QDivisor qdivisor_from_json(const Json& j, const std::string& where = "");
FormalDivisor formal_from_json(const Json& j, const std::string& where = "");
/// Also runs the generating-system validation.
GeneratingSystem system_from_json(const Json& j, const std::string& where = "");
GenerationCertificate certificate_from_json(const Json& j, const std::string& where = "");
BondalInstance instance_from_json(const Json& j, const std::string& where = "");

Fan parse_fan(const std::string& path);
QDivisor parse_qdivisor(const std::string& path);
GeneratingSystem parse_system(const std::string& path);
GenerationCertificate parse_certificate(const std::string& path);
BondalInstance parse_instance(const std::string& path);
void emit_certificate(const GenerationCertificate& cert, const std::string& path);

}  // namespace toric::io

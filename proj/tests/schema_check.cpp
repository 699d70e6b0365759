// Validates a JSON artifact against a schema file.
// Usage: schema_check <schema.json> <artifact.json>
// Exit codes: 0 = valid, 1 = invalid (issues listed on stdout), 2 = usage or
// unreadable/malformed input.
#include <fstream>
#include <iostream>

#include "approxlab/schema.hpp"

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: schema_check <schema.json> <artifact.json>\n";
    return 2;
  }
  try {
    std::ifstream schema_in(argv[1]);
    if (!schema_in) {
      std::cerr << "cannot open schema file " << argv[1] << "\n";
      return 2;
    }
    std::ifstream artifact_in(argv[2]);
    if (!artifact_in) {
      std::cerr << "cannot open artifact file " << argv[2] << "\n";
      return 2;
    }
    const approxlab::json schema = approxlab::json::parse(schema_in);
    const approxlab::json value = approxlab::json::parse(artifact_in);
    const auto issues = approxlab::schema_validate(value, schema);
    for (const auto& issue : issues) std::cout << issue.path << ": " << issue.message << "\n";
    return issues.empty() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
}

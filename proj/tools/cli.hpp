#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace etnes::cli {

/// Entry point of the `etnes` tool: run, compare, sweep, validate. Returns the
/// process exit status; diagnostics go to `err`.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// A bundled scenario name (e.g. paper_sec6_newton) or a path to a YAML file.
std::filesystem::path resolve_scenario(const std::string& name_or_path);

}  // namespace etnes::cli

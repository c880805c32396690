#pragma once

#include <string>

#include "faultline/ast.hpp"
#include "faultline/source.hpp"

namespace faultline::test {

// Repo-relative file loading for corpus programs and fixtures.
std::string repo_path(const std::string& rel);
std::string read_file(const std::string& path);

SourceUnit corpus_unit(const std::string& name, const std::string& entry = "");
Program parse_corpus(const std::string& name, const std::string& entry = "");
Program parse_text(const std::string& text, const std::string& entry = "");

}  // namespace faultline::test

#include "support/testutil.hpp"

#include <fstream>
#include <sstream>

#include "faultline/parser.hpp"

#ifndef FAULTLINE_REPO_ROOT
#define FAULTLINE_REPO_ROOT "."
#endif

namespace faultline::test {

std::string repo_path(const std::string& rel) {
  return std::string(FAULTLINE_REPO_ROOT) + "/" + rel;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SourceUnit corpus_unit(const std::string& name, const std::string& entry) {
  SourceUnit u;
  u.path = repo_path("corpus/" + name);
  u.text = read_file(u.path);
  u.entry = entry;
  return u;
}

Program parse_corpus(const std::string& name, const std::string& entry) {
  return parse_unit(corpus_unit(name, entry));
}

Program parse_text(const std::string& text, const std::string& entry) {
  SourceUnit u;
  u.path = "<test>";
  u.text = text;
  u.entry = entry;
  return parse_unit(u);
}

}  // namespace faultline::test

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "faultline/cfg.hpp"
#include "faultline/parser.hpp"
#include "faultline/pretty.hpp"
#include "support/testutil.hpp"

using namespace faultline;
using test::parse_corpus;
using test::parse_text;

TEST_CASE("empty source parses to an empty program") {
  Program p = parse_text("");
  CHECK(p.functions.empty());
  CHECK(p.assertions.empty());
  CHECK(p.records.empty());
}

TEST_CASE("print_message corpus program") {
  Program p = parse_corpus("print_message.fic");
  REQUIRE(p.records.size() == 1);
  CHECK(p.records[0].name == "data_t");
  REQUIRE(p.records[0].fields.size() == 3);
  CHECK(p.records[0].fields[0].name == "msg_size");
  CHECK(p.records[0].fields[1].name == "msg");
  CHECK(p.records[0].fields[1].type.array_len == 256);
  CHECK(p.records[0].fields[2].name == "key");
  CHECK(p.records[0].fields[2].type.array_len == 8);
  REQUIRE(p.functions.size() == 1);
  CHECK(p.functions[0].name == "print_message");
  CHECK(p.entry == 0);
  REQUIRE(p.assertions.size() == 1);
  CHECK(p.assertions[0].origin == AssertOrigin::User);
}

TEST_CASE("pointer arithmetic is rejected") {
  const char* src = R"(
record r { u32 x; }
void f(r *p) {
    p = p + 1;
}
)";
  CHECK_THROWS_AS(parse_text(src), Error);
  try {
    parse_text(src);
  } catch (const Error& e) {
    CHECK(e.kind == ErrorKind::UnsupportedConstruct);
  }
}

TEST_CASE("duplicate labels are rejected") {
  const char* src = R"(
void f() {
l1:
    u32 x;
    x = 1;
l1:
    x = 2;
}
)";
  CHECK_THROWS_AS(parse_text(src), Error);
}

TEST_CASE("duplicate names are rejected") {
  CHECK_THROWS_AS(parse_text("u32 g; u32 g;"), Error);
  CHECK_THROWS_AS(parse_text("void f() {} void f() {}"), Error);
  CHECK_THROWS_AS(parse_text("void f(u32 a, u32 a) {}"), Error);
}

TEST_CASE("calls cannot appear inside expressions") {
  const char* src = R"(
u32 one() { return 1; }
void analysis_main() {
    u32 x;
    x = one() + 2;
}
)";
  CHECK_THROWS_AS(parse_text(src), Error);
}

TEST_CASE("round trip of a structured program") {
  const char* src = R"(
record pair { u32 a; u32 b[3]; }

pair g;
u32 total;

u32 sum3(u32 xs[3]) {
    u32 acc;
    u32 i;
    acc = 0;
    for (i = 0; i < 3; i = i + 1) {
        acc = acc + xs[i];
    }
    return acc;
}

void analysis_main() {
    u32 n;
    n = __sym_input_u32(n);
    g.a = n & 7;
    g.b[0] = 1;
    if (g.a > 3 && n != 0) {
        total = g.a * 2;
    } else {
        while (total < 10) {
            total = total + 1;
            if (total == 7) {
                break;
            }
        }
    }
    __assert(total < 100);
}
)";
  Program p = parse_text(src);
  std::string text = pretty_print(p);
  SourceUnit u;
  u.text = text;
  Program q = parse_unit(u);
  CHECK(structurally_equal(p, q));
  // Canonical form is a fixpoint of print-parse.
  CHECK(pretty_print(q) == text);
}

TEST_CASE("round trip of the corpus file") {
  Program p = parse_corpus("print_message.fic");
  SourceUnit u;
  u.text = pretty_print(p);
  Program q = parse_unit(u);
  CHECK(structurally_equal(p, q));
}

TEST_CASE("straight-line function lowers to a single body block") {
  const char* src = R"(
void f() {
    u32 a;
    u32 b;
    a = 1;
    b = a + 2;
    a = b * b;
}
)";
  Program p = parse_text(src);
  Cfg cfg = build_cfg(p, 0);
  // entry holds the three statements and jumps straight to exit
  CHECK(cfg.blocks[size_t(cfg.entry)].stmts.size() == 3);
  REQUIRE(cfg.blocks[size_t(cfg.entry)].succs.size() == 1);
  CHECK(cfg.blocks[size_t(cfg.entry)].succs[0] == cfg.exit);
  CHECK(cfg.loop_headers.empty());
}

TEST_CASE("print_message CFG has one loop headed by the loop condition") {
  Program p = parse_corpus("print_message.fic");
  Cfg cfg = build_cfg(p, 0);
  REQUIRE(cfg.loop_headers.size() == 1);
  int header = *cfg.loop_headers.begin();
  CHECK(cfg.blocks[size_t(header)].term == TermKind::Branch);
  // the header's branch statement is the `i <= size` If
  StmtId cond_stmt = cfg.blocks[size_t(header)].term_stmt;
  const Stmt& s = p.stmt(cond_stmt);
  REQUIRE(s.kind == StmtKind::If);
  const Expr& cond = p.expr(s.expr);
  CHECK(cond.kind == ExprKind::Binary);
  CHECK(cond.bin_op == BinOp::Le);
}

TEST_CASE("goto produces an edge from the goto block to the labeled block") {
  const char* src = R"(
u32 g;
void f() {
    g = 1;
    goto out;
    g = 2;
out:
    g = 3;
}
)";
  Program p = parse_text(src, "f");
  Cfg cfg = build_cfg(p, 0);
  // find the block holding `g = 1`
  int src_block = -1, label_block = -1;
  for (size_t b = 0; b < cfg.blocks.size(); ++b) {
    for (StmtId sid : cfg.blocks[b].stmts) {
      const Stmt& s = p.stmt(sid);
      if (s.kind == StmtKind::Assign && p.expr(s.expr).kind == ExprKind::IntLit) {
        if (p.expr(s.expr).literal == 1) src_block = int(b);
        if (p.expr(s.expr).literal == 3) label_block = int(b);
      }
    }
  }
  REQUIRE(src_block >= 0);
  REQUIRE(label_block >= 0);
  bool edge = false;
  for (int s : cfg.blocks[size_t(src_block)].succs) edge |= (s == label_block);
  CHECK(edge);
  // `g = 2` is unreachable
  for (size_t b = 0; b < cfg.blocks.size(); ++b)
    for (StmtId sid : cfg.blocks[b].stmts) {
      const Stmt& s = p.stmt(sid);
      if (s.kind == StmtKind::Assign && p.expr(s.expr).kind == ExprKind::IntLit &&
          p.expr(s.expr).literal == 2)
        CHECK_FALSE(cfg.reachable(int(b)));
    }
}

// Dominance sanity on the corpus CFG: idom strictly dominates, checked by
// brute-force path enumeration (every entry->b path passes through idom(b)).
namespace {

void all_paths_hit(const Cfg& cfg, int target, int must_hit, bool& ok) {
  std::vector<int> stack{cfg.entry};
  std::vector<char> on_path(cfg.blocks.size(), 0);
  std::function<void(int)> dfs = [&](int b) {
    if (!ok) return;
    if (b == target) {
      // a full path reached target; must_hit should have been seen
      return;
    }
    on_path[size_t(b)] = 1;
    for (int s : cfg.blocks[size_t(b)].succs) {
      if (on_path[size_t(s)]) continue;  // simple paths only
      if (s == target && must_hit != b && !on_path[size_t(must_hit)] &&
          must_hit != target)
        ok = false;
      if (s != target) dfs(s);
    }
    on_path[size_t(b)] = 0;
  };
  if (must_hit == cfg.entry || must_hit == target) return;
  dfs(cfg.entry);
}

}  // namespace

TEST_CASE("immediate dominators verified by path enumeration") {
  Program p = parse_corpus("print_message.fic");
  Cfg cfg = build_cfg(p, 0);
  REQUIRE(cfg.blocks.size() <= 24);
  for (size_t b = 0; b < cfg.blocks.size(); ++b) {
    if (!cfg.reachable(int(b)) || int(b) == cfg.entry) continue;
    int d = cfg.idom[b];
    REQUIRE(d >= 0);
    bool ok = true;
    all_paths_hit(cfg, int(b), d, ok);
    CHECK(ok);
  }
}

#pragma once

#include <map>
#include <string>
#include <vector>

#include "faultline/ast.hpp"

namespace faultline {

enum class FaultModel : uint8_t { Data, TestInversion, Both };
const char* fault_model_name(FaultModel m);
bool fault_model_from_name(const std::string& s, FaultModel& out);

enum class SiteKind : uint8_t { TestCondition, Data };

enum class SiteRole : uint8_t { Rhs, Condition, Arg, Ret };

struct FaultSite {
  int32_t id = kNoId;
  std::string var_name;      // fault_<id>
  std::string counter_name;  // fault_<id>_counter
  SiteKind kind = SiteKind::Data;
  ScalarTy expr_type = ScalarTy::U32;  // type the XOR is applied at
  StmtId stmt = kNoId;       // statement in the instrumented program
  SiteRole role = SiteRole::Rhs;
  int32_t arg_index = kNoId;
  int32_t function = kNoId;
  SourceLoc loc;
};

struct FaultRegistry {
  FaultModel model = FaultModel::Both;
  std::vector<FaultSite> sites;
  Program program;  // instrumented

  const FaultSite* site_by_name(const std::string& name) const;
};

// Per-site fault assignment. Sites not listed are fixed to zero.
struct FaultValue {
  bool symbolic = false;
  uint32_t fixed = 0;
};

struct FaultConfig {
  FaultModel model = FaultModel::Both;
  std::map<int32_t, FaultValue> sites;

  bool is_symbolic(int32_t site) const {
    auto it = sites.find(site);
    return it != sites.end() && it->second.symbolic;
  }
  uint32_t fixed_value(int32_t site) const {
    auto it = sites.find(site);
    return it != sites.end() && !it->second.symbolic ? it->second.fixed : 0;
  }
  static FaultConfig all_symbolic(const FaultRegistry& r);
};

// A faultable top-level expression, in appearance order.
struct FaultablePoint {
  StmtId stmt = kNoId;    // in the walked program
  SiteRole role = SiteRole::Rhs;
  int32_t arg_index = kNoId;
  ExprId expr = kNoId;
  SiteKind kind = SiteKind::Data;
  int32_t function = kNoId;
};

// Enumerate the faultable top-level expressions of a program: right-hand
// sides of assignments and initializations, branch and loop conditions, call
// arguments and returned expressions. Pointer-valued arguments, symbolic
// input reads and assertion conditions are excluded. Under TestInversion only
// branch conditions are listed.
std::vector<FaultablePoint> enumerate_faultable(const Program& p, FaultModel model);

// XOR a fresh fault variable into every faultable expression. Branch
// conditions are materialized as u8 {0,1} before the XOR. With all fault
// variables at zero the instrumented program behaves exactly like `p`.
FaultRegistry instrument(const Program& p, FaultModel model);

// Insert one occurrence counter bump per site, placed so that the counter
// increments exactly once per dynamic evaluation of the site's expression.
// Loop conditions are lowered to `while (1) { counter; if (!cond) break; }`.
FaultRegistry insert_counters(const FaultRegistry& r);

// Resolve a fault configuration into source: sites fixed to zero lose their
// XOR entirely, sites fixed to v become `expr ^ v`, symbolic sites keep the
// fault variable.
Program fix_and_simplify(const FaultRegistry& r, const FaultConfig& config);

}  // namespace faultline

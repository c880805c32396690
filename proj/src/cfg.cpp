#include "faultline/cfg.hpp"

#include <algorithm>
#include <functional>

namespace faultline {

namespace {

struct Builder {
  const Program& p;
  Cfg cfg;
  std::map<std::string, int> label_block;
  std::vector<int> break_targets;
  int cur = -1;

  int new_block() {
    cfg.blocks.emplace_back();
    return int(cfg.blocks.size() - 1);
  }

  void seal_jump(int from, int to, EdgeLabel label = EdgeLabel::Fall) {
    Block& b = cfg.blocks[size_t(from)];
    b.succs.push_back(to);
    b.labels.push_back(label);
  }

  // Collect label targets first so forward gotos resolve.
  void collect_labels(const std::vector<StmtId>& body) {
    for (StmtId id : body) {
      const Stmt& s = p.stmt(id);
      if (s.kind == StmtKind::Label) label_block[s.label] = new_block();
    }
  }

  void lower_block(const std::vector<StmtId>& stmts) {
    for (StmtId id : stmts) lower_stmt(id);
  }

  void lower_stmt(StmtId id) {
    const Stmt& s = p.stmt(id);
    switch (s.kind) {
      case StmtKind::Assign:
      case StmtKind::Call:
      case StmtKind::Assert:
      case StmtKind::Countermeasure:
      case StmtKind::CounterInc: {
        cfg.blocks[size_t(cur)].stmts.push_back(id);
        cfg.block_of_stmt[id] = cur;
        if (s.kind == StmtKind::Countermeasure) {
          Block& b = cfg.blocks[size_t(cur)];
          b.stmts.pop_back();  // keep it as the terminator statement
          b.term = TermKind::Halt;
          b.term_stmt = id;
          seal_jump(cur, cfg.exit);
          cur = new_block();  // unreachable continuation
        }
        break;
      }
      case StmtKind::Label: {
        int lb = label_block.at(s.label);
        seal_jump(cur, lb);
        cur = lb;
        cfg.block_of_stmt[id] = cur;
        break;
      }
      case StmtKind::Goto: {
        cfg.block_of_stmt[id] = cur;
        Block& b = cfg.blocks[size_t(cur)];
        b.term = TermKind::Jump;
        seal_jump(cur, label_block.at(s.label));
        cur = new_block();
        break;
      }
      case StmtKind::Break: {
        cfg.block_of_stmt[id] = cur;
        seal_jump(cur, break_targets.back());
        cur = new_block();
        break;
      }
      case StmtKind::Return: {
        cfg.block_of_stmt[id] = cur;
        Block& b = cfg.blocks[size_t(cur)];
        b.term = TermKind::Return;
        b.term_stmt = id;
        b.ret = s.expr;
        seal_jump(cur, cfg.exit);
        cur = new_block();
        break;
      }
      case StmtKind::If: {
        cfg.block_of_stmt[id] = cur;
        int cond_block = cur;
        Block& b = cfg.blocks[size_t(cond_block)];
        b.term = TermKind::Branch;
        b.cond = s.expr;
        b.term_stmt = id;
        int then_head = new_block();
        seal_jump(cond_block, then_head, EdgeLabel::True);
        cur = then_head;
        lower_block(s.then_block);
        int then_tail = cur;
        int join = new_block();
        seal_jump(then_tail, join);
        if (!s.else_block.empty()) {
          int else_head = new_block();
          seal_jump(cond_block, else_head, EdgeLabel::False);
          cur = else_head;
          lower_block(s.else_block);
          seal_jump(cur, join);
        } else {
          seal_jump(cond_block, join, EdgeLabel::False);
        }
        cur = join;
        break;
      }
      case StmtKind::While: {
        int header = new_block();
        seal_jump(cur, header);
        cfg.block_of_stmt[id] = header;
        Block& h = cfg.blocks[size_t(header)];
        h.term = TermKind::Branch;
        h.cond = s.expr;
        h.term_stmt = id;
        int body_head = new_block();
        int after = new_block();
        seal_jump(header, body_head, EdgeLabel::True);
        seal_jump(header, after, EdgeLabel::False);
        break_targets.push_back(after);
        cur = body_head;
        lower_block(s.then_block);
        break_targets.pop_back();
        seal_jump(cur, header);  // back edge
        cur = after;
        break;
      }
    }
  }
};

std::vector<int> reverse_postorder(const std::vector<Block>& blocks, int root) {
  std::vector<int> order;
  std::vector<char> seen(blocks.size(), 0);
  std::function<void(int)> dfs = [&](int b) {
    seen[size_t(b)] = 1;
    for (int s : blocks[size_t(b)].succs)
      if (!seen[size_t(s)]) dfs(s);
    order.push_back(b);
  };
  dfs(root);
  std::reverse(order.begin(), order.end());
  return order;
}

// Cooper-Harvey-Kennedy iterative dominators over an explicit edge list.
std::vector<int> compute_idom(size_t nblocks, int root,
                              const std::vector<std::vector<int>>& preds,
                              const std::vector<int>& rpo) {
  std::vector<int> rpo_index(nblocks, -1);
  for (size_t k = 0; k < rpo.size(); ++k) rpo_index[size_t(rpo[k])] = int(k);
  std::vector<int> idom(nblocks, -1);
  idom[size_t(root)] = root;
  auto intersect = [&](int a, int b) {
    while (a != b) {
      while (rpo_index[size_t(a)] > rpo_index[size_t(b)]) a = idom[size_t(a)];
      while (rpo_index[size_t(b)] > rpo_index[size_t(a)]) b = idom[size_t(b)];
    }
    return a;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (int b : rpo) {
      if (b == root) continue;
      int new_idom = -1;
      for (int pr : preds[size_t(b)]) {
        if (idom[size_t(pr)] == -1) continue;
        new_idom = new_idom == -1 ? pr : intersect(new_idom, pr);
      }
      if (new_idom != -1 && idom[size_t(b)] != new_idom) {
        idom[size_t(b)] = new_idom;
        changed = true;
      }
    }
  }
  idom[size_t(root)] = -1;  // root has no immediate dominator
  return idom;
}

}  // namespace

std::vector<std::vector<int>> Cfg::preds() const {
  std::vector<std::vector<int>> out(blocks.size());
  for (size_t b = 0; b < blocks.size(); ++b)
    for (int s : blocks[b].succs) out[size_t(s)].push_back(int(b));
  return out;
}

bool Cfg::reachable(int block) const {
  return block == entry || idom[size_t(block)] != -1;
}

Cfg build_cfg(const Program& p, int function) {
  const Function& fn = p.functions[size_t(function)];
  Builder bld{p};
  bld.cfg.function = function;
  int entry = bld.new_block();
  int exit = bld.new_block();
  bld.cfg.entry = entry;
  bld.cfg.exit = exit;
  bld.cfg.blocks[size_t(exit)].term = TermKind::None;
  bld.collect_labels(fn.body);
  bld.cur = entry;
  bld.lower_block(fn.body);
  // falling off the end returns
  bld.cfg.blocks[size_t(bld.cur)].term = TermKind::Return;
  bld.seal_jump(bld.cur, exit);

  Cfg cfg = std::move(bld.cfg);
  cfg.rpo = reverse_postorder(cfg.blocks, cfg.entry);
  auto preds = cfg.preds();
  cfg.idom = compute_idom(cfg.blocks.size(), cfg.entry, preds, cfg.rpo);

  // Postdominators on the reverse graph. Blocks that cannot reach exit get
  // a virtual edge so the computation stays total.
  std::vector<char> reaches_exit(cfg.blocks.size(), 0);
  {
    std::vector<int> work{cfg.exit};
    reaches_exit[size_t(cfg.exit)] = 1;
    while (!work.empty()) {
      int b = work.back();
      work.pop_back();
      for (size_t q = 0; q < cfg.blocks.size(); ++q) {
        if (reaches_exit[q]) continue;
        for (int s : cfg.blocks[q].succs)
          if (s == b) { reaches_exit[q] = 1; work.push_back(int(q)); break; }
      }
    }
  }
  std::vector<std::vector<int>> rsuccs(cfg.blocks.size());  // reverse graph succ = preds
  std::vector<std::vector<int>> rpreds(cfg.blocks.size());
  auto add_edge = [&](int from, int to) {
    rsuccs[size_t(to)].push_back(from);
    rpreds[size_t(from)].push_back(to);
  };
  for (size_t b = 0; b < cfg.blocks.size(); ++b)
    for (int s : cfg.blocks[b].succs) add_edge(int(b), s);
  for (size_t b = 0; b < cfg.blocks.size(); ++b)
    if (!reaches_exit[b] && cfg.reachable(int(b))) add_edge(int(b), cfg.exit);

  std::vector<Block> rblocks(cfg.blocks.size());
  for (size_t b = 0; b < cfg.blocks.size(); ++b)
    rblocks[b].succs = rsuccs[b];
  std::vector<int> rrpo = reverse_postorder(rblocks, cfg.exit);
  cfg.ipostdom = compute_idom(cfg.blocks.size(), cfg.exit, rpreds, rrpo);

  // Natural loop headers: targets of edges from blocks they dominate.
  auto dominates = [&](int a, int b) {
    while (b != -1 && b != a) b = cfg.idom[size_t(b)];
    return b == a;
  };
  for (size_t b = 0; b < cfg.blocks.size(); ++b) {
    if (!cfg.reachable(int(b)) && int(b) != cfg.entry) continue;
    for (int s : cfg.blocks[b].succs)
      if (s == int(b) || dominates(s, int(b))) cfg.loop_headers.insert(s);
  }
  return cfg;
}

}  // namespace faultline

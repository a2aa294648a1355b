#include "wrtm/weight.hpp"

#include <algorithm>
#include <set>

#include "wrtm/error.hpp"
#include "wrtm/simulate.hpp"

namespace wrtm {

bool RewriteGraph::has_edge(SymbolId from, SymbolId to) const {
  return std::find(edges.begin(), edges.end(), std::make_pair(from, to)) != edges.end();
}

RewriteGraph rewrite_graph(const Machine& m) {
  RewriteGraph g;
  g.vertices = m.symbol_count();
  std::set<std::pair<SymbolId, SymbolId>> seen;
  for (const auto& r : m.rules()) {
    if (m.is_endmarker(r.read)) continue;
    if (seen.emplace(r.action.write, r.read).second) g.edges.emplace_back(r.action.write, r.read);
  }
  return g;
}

WrVerdict check_weight_reducing(const Machine& m) {
  const auto g = rewrite_graph(m);
  // down[σ] = symbols written over σ, i.e. graph edges reversed.
  std::vector<std::vector<SymbolId>> down(g.vertices);
  for (auto [tau, sigma] : g.edges) down[sigma].push_back(tau);

  enum : std::uint8_t { White, Grey, Black };
  std::vector<std::uint8_t> colour(g.vertices, White);
  std::vector<std::uint32_t> rank(g.vertices, 0);
  std::vector<SymbolId> parent(g.vertices, 0);

  for (SymbolId root = 0; root < g.vertices; ++root) {
    if (colour[root] != White) continue;
    std::vector<std::pair<SymbolId, std::size_t>> stack{{root, 0}};
    colour[root] = Grey;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < down[v].size()) {
        const SymbolId u = down[v][next++];
        if (colour[u] == Grey) {
          // Path u ↓ … ↓ v ↓ u in rewrite order; graph edges point upward.
          std::vector<SymbolId> path{v};
          for (SymbolId x = v; x != u; x = parent[x]) path.push_back(parent[x]);
          WrVerdict out;
          out.cycle = std::move(path);  // v ← parent … ← u, i.e. graph direction
          return out;
        }
        if (colour[u] == White) {
          colour[u] = Grey;
          parent[u] = v;
          stack.emplace_back(u, 0);
        }
        continue;
      }
      std::uint32_t r = 0;
      for (auto u : down[v]) r = std::max(r, rank[u] + 1);
      rank[v] = r;
      colour[v] = Black;
      stack.pop_back();
    }
  }
  WrVerdict out;
  out.order = WrOrder{std::move(rank)};
  return out;
}

bool order_respected(const Machine& m, const WrOrder& order) {
  if (order.rank.size() < m.symbol_count()) return false;
  return std::all_of(m.rules().begin(), m.rules().end(), [&](const Rule& r) {
    return m.is_endmarker(r.read) || order.rank[r.action.write] < order.rank[r.read];
  });
}

std::uint64_t visit_bound_from_time(std::uint64_t K, std::uint64_t /*C*/, std::uint64_t n_states) {
  if (K == 0 || n_states == 0) throw Error("visit bound needs K ≥ 1 and at least one state");
  std::uint64_t p = 1;
  for (std::uint64_t i = 0; i < K; ++i)
    if (__builtin_mul_overflow(p, n_states, &p)) throw OverflowError("visit bound overflows");
  std::uint64_t v;
  if (__builtin_mul_overflow(2 * K, p, &v) || __builtin_add_overflow(v, K, &v) || 2 * K < K)
    throw OverflowError("visit bound overflows");
  return v;
}

namespace {

std::vector<bool> written_inputs(const Machine& m) {
  std::vector<bool> out(m.symbol_count(), false);
  for (const auto& r : m.rules())
    if (m.is_input(r.action.write)) out[r.action.write] = true;
  return out;
}

bool needs_tags(const Machine& m, const std::vector<bool>& written, SymbolId s) {
  if (s == kBlank || m.is_endmarker(s)) return false;
  return !m.is_input(s) || written[s];
}

}  // namespace

std::uint64_t bounded_alphabet_size(const Machine& m, std::uint64_t k) {
  const auto written = written_inputs(m);
  std::uint64_t plain = 0, tagged = 0;
  for (SymbolId s = 0; s < m.symbol_count(); ++s) {
    if (s == kBlank || m.is_endmarker(s) || m.is_input(s)) ++plain;
    if (needs_tags(m, written, s)) ++tagged;
  }
  return plain + tagged * k;
}

Machine bound_visits(const Machine& m, std::uint64_t k) {
  if (k == 0) throw Error("bound_visits needs k ≥ 1");
  require_valid(m);
  const auto written = written_inputs(m);

  Machine out(m.name(), m.end_marked());
  for (StateId q = 0; q < m.state_count(); ++q) out.add_state(m.state_name(q));
  out.set_initial(m.initial());
  for (auto q : m.finals()) out.set_final(q);

  // plain[s] is the id of s itself in `out`; tag[s][i] the id of (s, i).
  std::vector<std::optional<SymbolId>> plain(m.symbol_count());
  std::vector<std::vector<SymbolId>> tag(m.symbol_count());
  for (SymbolId s = 0; s < m.symbol_count(); ++s) {
    if (s == kBlank || m.is_endmarker(s)) plain[s] = s;
    else if (m.is_input(s)) plain[s] = out.add_symbol(m.symbol_name(s), true);
  }
  for (SymbolId s = 0; s < m.symbol_count(); ++s) {
    if (!needs_tags(m, written, s)) continue;
    for (std::uint64_t i = 0; i < k; ++i)
      tag[s].push_back(
          out.add_symbol(fresh_symbol_name(out, m.symbol_name(s) + "." + std::to_string(i))));
  }

  auto fresh_write = [&](SymbolId a) { return m.is_endmarker(a) ? a : tag[a][k - 1]; };
  for (const auto& r : m.rules()) {
    const auto [q2, a2, d] = r.action;
    if (plain[r.read]) out.add_transition(r.from, *plain[r.read], {q2, fresh_write(a2), d});
    if (!tag[r.read].empty())
      for (std::uint64_t i = 1; i < k; ++i)
        out.add_transition(r.from, tag[r.read][i], {q2, tag[a2][i - 1], d});
  }
  return out;
}

Machine lt_to_wr(const Machine& m, std::uint64_t K, std::uint64_t C) {
  return bound_visits(m, visit_bound_from_time(K, C, m.state_count()));
}

std::optional<Word> find_time_bound_violation(const Machine& m, std::uint64_t K, std::uint64_t C,
                                              std::size_t max_len) {
  for (const auto& w : words_up_to(m, max_len)) {
    const auto r = run(m, w, K * w.size() + C);
    if (r.verdict == Verdict::BudgetExceeded) return w;
  }
  return std::nullopt;
}

}  // namespace wrtm

#include "egz/hollow_search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <unordered_map>

#include "egz/polytope.hpp"

namespace egz {

namespace {

using ivec = std::vector<int64_t>;
using ipts = std::vector<ivec>;

// coordinates this small take the int64 code path; the dynamic overflow
// guard below catches the rare case where intermediate values still grow
// past what int64 holds, and the caller reruns with big integers
constexpr int64_t kFastCoordLimit = int64_t(1) << 40;
constexpr int64_t kFastValueLimit = int64_t(1) << 60;

int64_t floor_div_i64(int64_t a, int64_t b) {
  int64_t q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

// canonical form working state; T is int64_t or bigint, the matrices are
// row-major flat buffers of shape d x total with the live column count
// tracked by the recursion level
template <typename T>
struct CanonWork {
  size_t d = 0;
  size_t total = 0;
  std::vector<T> diffs;      // diffs[c * d + i], one difference per column c
  std::vector<T> prefix;     // prefix[i * total + j], columns 0..level-1 live
  std::vector<T> work;       // HNF scratch, same layout as prefix
  std::vector<T> flat;       // column-major flattening of work
  std::vector<T> best_flat;
  std::vector<T> best_h;
  bool have_best = false;
  bool overflow = false;
  BudgetMeter* meter = nullptr;
  std::vector<bool> used;

  T& at(std::vector<T>& m, size_t i, size_t j) { return m[i * total + j]; }
};

template <typename T>
void sub_mul(CanonWork<T>& st, T& e, const T& q, const T& f) {
  if constexpr (std::is_same_v<T, int64_t>) {
    __int128 v = static_cast<__int128>(e) -
                 static_cast<__int128>(q) * static_cast<__int128>(f);
    if (v > kFastValueLimit || v < -kFastValueLimit) {
      st.overflow = true;
      return;
    }
    e = static_cast<int64_t>(v);
  } else {
    e -= q * f;
  }
}

template <typename T>
T abs_of(const T& x) {
  if constexpr (std::is_same_v<T, int64_t>)
    return x < 0 ? -x : x;
  else
    return boost::multiprecision::abs(x);
}

template <typename T>
T floor_quot(const T& a, const T& b) {
  if constexpr (std::is_same_v<T, int64_t>)
    return floor_div_i64(a, b);
  else
    return floor_div(a, b);
}

// same pivoting and reduction order as the big integer HNF used everywhere
// else, so both code paths produce identical matrices
template <typename T>
void hnf_in_work(CanonWork<T>& st, size_t cols) {
  const size_t rows = st.d;
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    while (true) {
      size_t best = rows;
      for (size_t i = r; i < rows; ++i)
        if (st.at(st.work, i, col) != 0 &&
            (best == rows || abs_of(st.at(st.work, i, col)) <
                                 abs_of(st.at(st.work, best, col))))
          best = i;
      if (best == rows) break;
      if (best != r)
        for (size_t j = 0; j < cols; ++j)
          std::swap(st.at(st.work, best, j), st.at(st.work, r, j));
      bool done = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (st.at(st.work, i, col) == 0) continue;
        T q = floor_quot(st.at(st.work, i, col), st.at(st.work, r, col));
        if (q != 0)
          for (size_t j = 0; j < cols; ++j) {
            sub_mul(st, st.at(st.work, i, j), q, st.at(st.work, r, j));
            if (st.overflow) return;
          }
        if (st.at(st.work, i, col) != 0) done = false;
      }
      if (done) break;
    }
    if (st.at(st.work, r, col) == 0) continue;
    if (st.at(st.work, r, col) < 0)
      for (size_t j = 0; j < cols; ++j)
        st.at(st.work, r, j) = -st.at(st.work, r, j);
    for (size_t i = 0; i < r; ++i) {
      T q = floor_quot(st.at(st.work, i, col), st.at(st.work, r, col));
      if (q != 0)
        for (size_t j = 0; j < cols; ++j) {
          sub_mul(st, st.at(st.work, i, j), q, st.at(st.work, r, j));
          if (st.overflow) return;
        }
    }
    ++r;
  }
}

// copies the live prefix columns into work, reduces, and flattens the
// result column-major into flat; returns -1/0/+1 against best_flat
template <typename T>
int reduce_and_compare(CanonWork<T>& st, size_t cols) {
  for (size_t i = 0; i < st.d; ++i)
    for (size_t j = 0; j < cols; ++j)
      st.at(st.work, i, j) = st.at(st.prefix, i, j);
  hnf_in_work(st, cols);
  if (st.overflow) return 0;
  st.flat.resize(st.d * cols);
  for (size_t j = 0; j < cols; ++j)
    for (size_t i = 0; i < st.d; ++i)
      st.flat[j * st.d + i] = st.at(st.work, i, j);
  if (!st.have_best) return -1;
  for (size_t i = 0; i < st.flat.size(); ++i) {
    if (st.flat[i] < st.best_flat[i]) return -1;
    if (st.flat[i] > st.best_flat[i]) return 1;
  }
  return 0;
}

template <typename T>
void canon_dfs(CanonWork<T>& st, size_t level) {
  if (st.overflow) return;
  if (level == st.total) {
    if (reduce_and_compare(st, st.total) < 0) {
      st.best_flat = st.flat;
      st.best_h = st.work;
      st.have_best = true;
    }
    return;
  }
  for (size_t c = 0; c < st.total; ++c) {
    if (st.used[c]) continue;
    st.meter->spend(1);
    for (size_t i = 0; i < st.d; ++i)
      st.at(st.prefix, i, level) = st.diffs[c * st.d + i];
    if (reduce_and_compare(st, level + 1) <= 0) {
      st.used[c] = true;
      canon_dfs(st, level + 1);
      st.used[c] = false;
    }
    if (st.overflow) return;
  }
}

// incremental int64 variant of the search above: appending a column to the
// HNF never touches earlier columns (every row op it triggers acts on rows
// that are zero there), so the state per level is just the accumulated row
// transform and the rank, and the flattened form grows append-only; this
// lets the candidate comparison run on the d new entries alone
struct FastCanon {
  size_t d = 0;
  size_t total = 0;
  std::vector<int64_t> diffs;   // diffs[c * d + i]
  std::vector<int64_t> h;       // h[i * total + j], columns 0..level-1 live
  std::vector<int64_t> u;       // u[i * d + j], accumulated row transform
  std::vector<int64_t> u_save;  // per-level snapshots of u
  size_t rank = 0;
  std::vector<int64_t> best_flat;  // column-major; prefix of best_len valid
  size_t best_len = 0;
  std::vector<int64_t> best_h;
  bool overflow = false;
  BudgetMeter* meter = nullptr;
  std::vector<bool> used;
};

bool fc_submul(FastCanon& st, int64_t& e, int64_t q, int64_t f) {
  __int128 v = static_cast<__int128>(e) -
               static_cast<__int128>(q) * static_cast<__int128>(f);
  if (v > kFastValueLimit || v < -kFastValueLimit) {
    st.overflow = true;
    return false;
  }
  e = static_cast<int64_t>(v);
  return true;
}

// transforms, reduces and places column number level, then compares the d
// new flat entries against the best prefix; on a strict improvement the
// best prefix is rewritten up to this level and extended by the recursion
int fc_add_column(FastCanon& st, const int64_t* c, size_t level) {
  const size_t d = st.d;
  const size_t stride = st.total;
  auto h = [&](size_t i, size_t j) -> int64_t& { return st.h[i * stride + j]; };
  auto u = [&](size_t i, size_t j) -> int64_t& { return st.u[i * d + j]; };
  for (size_t i = 0; i < d; ++i) {
    __int128 acc = 0;
    for (size_t j = 0; j < d; ++j)
      acc += static_cast<__int128>(u(i, j)) * c[j];
    if (acc > kFastValueLimit || acc < -kFastValueLimit) {
      st.overflow = true;
      return 0;
    }
    h(i, level) = static_cast<int64_t>(acc);
  }
  const size_t r = st.rank;
  if (r < d) {
    while (true) {
      size_t best = d;
      for (size_t i = r; i < d; ++i) {
        int64_t a = h(i, level) < 0 ? -h(i, level) : h(i, level);
        int64_t b = best == d ? 0 : (h(best, level) < 0 ? -h(best, level)
                                                        : h(best, level));
        if (h(i, level) != 0 && (best == d || a < b)) best = i;
      }
      if (best == d) break;
      if (best != r) {
        std::swap(h(best, level), h(r, level));
        for (size_t j = 0; j < d; ++j) std::swap(u(best, j), u(r, j));
      }
      bool done = true;
      for (size_t i = r + 1; i < d; ++i) {
        if (h(i, level) == 0) continue;
        int64_t q = floor_div_i64(h(i, level), h(r, level));
        if (q != 0) {
          h(i, level) -= q * h(r, level);
          for (size_t j = 0; j < d; ++j)
            if (!fc_submul(st, u(i, j), q, u(r, j))) return 0;
        }
        if (h(i, level) != 0) done = false;
      }
      if (done) break;
    }
    if (h(r, level) != 0) {
      if (h(r, level) < 0) {
        h(r, level) = -h(r, level);
        for (size_t j = 0; j < d; ++j) u(r, j) = -u(r, j);
      }
      for (size_t i = 0; i < r; ++i) {
        int64_t q = floor_div_i64(h(i, level), h(r, level));
        if (q != 0) {
          h(i, level) -= q * h(r, level);
          for (size_t j = 0; j < d; ++j)
            if (!fc_submul(st, u(i, j), q, u(r, j))) return 0;
        }
      }
      st.rank = r + 1;
    }
  }
  int cmp = 0;
  for (size_t i = 0; i < d; ++i) {
    size_t pos = level * d + i;
    if (pos >= st.best_len || h(i, level) < st.best_flat[pos]) {
      cmp = -1;
      break;
    }
    if (h(i, level) > st.best_flat[pos]) {
      cmp = 1;
      break;
    }
  }
  if (cmp < 0) {
    for (size_t i = 0; i < d; ++i) st.best_flat[level * d + i] = h(i, level);
    st.best_len = (level + 1) * d;
  }
  return cmp;
}

// tie is true while the chain matches the best prefix exactly; a leaf
// reached with tie still true is a duplicate of the recorded best
void fc_dfs(FastCanon& st, size_t level, bool tie) {
  if (st.overflow) return;
  if (level == st.total) {
    if (!tie) st.best_h = st.h;
    return;
  }
  const size_t d2 = st.d * st.d;
  for (size_t c = 0; c < st.total; ++c) {
    if (st.used[c]) continue;
    st.meter->spend(1);
    std::copy(st.u.begin(), st.u.end(), st.u_save.begin() + level * d2);
    const size_t saved_rank = st.rank;
    int cmp = fc_add_column(st, &st.diffs[c * st.d], level);
    if (st.overflow) return;
    if (cmp <= 0) {
      st.used[c] = true;
      fc_dfs(st, level + 1, tie && cmp == 0);
      st.used[c] = false;
      if (st.overflow) return;
    }
    std::copy(st.u_save.begin() + level * d2,
              st.u_save.begin() + (level + 1) * d2, st.u.begin());
    st.rank = saved_rank;
  }
}

// returns false when intermediate values left the int64 range and the big
// integer code path has to be used instead
bool fast_canonical(const ipts& pts, size_t d, BudgetMeter& meter,
                    ipts& out) {
  FastCanon st;
  st.d = d;
  st.total = pts.size() - 1;
  st.meter = &meter;
  st.diffs.assign(d * st.total, 0);
  st.h.assign(d * st.total, 0);
  st.u.assign(d * d, 0);
  st.u_save.assign((st.total + 1) * d * d, 0);
  st.best_flat.assign(d * st.total, 0);
  st.best_h.assign(d * st.total, 0);
  st.used.assign(st.total, false);
  for (size_t base = 0; base < pts.size(); ++base) {
    size_t c = 0;
    for (size_t j = 0; j < pts.size(); ++j) {
      if (j == base) continue;
      for (size_t i = 0; i < d; ++i)
        st.diffs[c * d + i] = pts[j][i] - pts[base][i];
      ++c;
    }
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) st.u[i * d + j] = i == j ? 1 : 0;
    st.rank = 0;
    fc_dfs(st, 0, true);
    if (st.overflow) return false;
  }
  out.clear();
  out.emplace_back(d, 0);
  for (size_t j = 0; j < st.total; ++j) {
    ivec col(d);
    for (size_t i = 0; i < d; ++i) col[i] = st.best_h[i * st.total + j];
    out.push_back(std::move(col));
  }
  std::sort(out.begin(), out.end());
  return true;
}

// minimizes over all base points and column orders; pts must be distinct
// points of equal dimension; returns false only when the int64
// instantiation overflowed
template <typename T>
bool canon_run(const std::vector<std::vector<T>>& pts, size_t d,
               BudgetMeter& meter, std::vector<std::vector<T>>& out) {
  CanonWork<T> st;
  st.d = d;
  st.total = pts.size() - 1;
  st.meter = &meter;
  st.prefix.assign(d * st.total, T(0));
  st.work.assign(d * st.total, T(0));
  st.used.assign(st.total, false);
  for (size_t base = 0; base < pts.size(); ++base) {
    size_t c = 0;
    st.diffs.assign(d * st.total, T(0));
    for (size_t j = 0; j < pts.size(); ++j) {
      if (j == base) continue;
      for (size_t i = 0; i < d; ++i)
        st.diffs[c * d + i] = pts[j][i] - pts[base][i];
      ++c;
    }
    canon_dfs(st, 0);
    if (st.overflow) return false;
  }
  out.clear();
  out.emplace_back(d, T(0));
  for (size_t j = 0; j < st.total; ++j) {
    std::vector<T> col(d);
    for (size_t i = 0; i < d; ++i) col[i] = st.best_h[i * st.total + j];
    out.push_back(std::move(col));
  }
  std::sort(out.begin(), out.end());
  return true;
}

// exact rank of the difference matrix, used to recognize simplices; falls
// back to the big integer HNF on overflow
size_t diff_rank(const ipts& verts, size_t d) {
  CanonWork<int64_t> st;
  st.d = d;
  st.total = verts.size() - 1;
  st.work.assign(d * st.total, 0);
  for (size_t j = 1; j < verts.size(); ++j)
    for (size_t i = 0; i < d; ++i)
      st.at(st.work, i, j - 1) = verts[j][i] - verts[0][i];
  hnf_in_work(st, st.total);
  if (!st.overflow) {
    size_t rank = 0;
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < st.total; ++j)
        if (st.at(st.work, i, j) != 0) {
          ++rank;
          break;
        }
    return rank;
  }
  zmat diffs;
  for (size_t j = 1; j < verts.size(); ++j) {
    zvec row(d);
    for (size_t i = 0; i < d; ++i) row[i] = verts[j][i] - verts[0][i];
    diffs.push_back(std::move(row));
  }
  return row_hnf(diffs).size();
}

}  // namespace

std::vector<zvec> unimodular_canonical_form(const std::vector<zvec>& points,
                                            int64_t budget) {
  std::vector<zvec> pts = points;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) return {};
  const size_t d = pts[0].size();
  for (const auto& p : pts)
    if (p.size() != d)
      throw std::invalid_argument("canonical form: mixed dimensions");
  if (pts.size() == 1) return {zvec(d, 0)};

  BudgetMeter meter(budget, "canonical form");
  bool small = true;
  for (const auto& p : pts)
    for (const auto& x : p)
      if (x > kFastCoordLimit || x < -kFastCoordLimit) small = false;
  if (small) {
    ipts fast(pts.size());
    for (size_t j = 0; j < pts.size(); ++j)
      for (const auto& x : pts[j])
        fast[j].push_back(static_cast<int64_t>(x));
    ipts fast_out;
    if (fast_canonical(fast, d, meter, fast_out)) {
      std::vector<zvec> out;
      for (const auto& p : fast_out) {
        zvec z(d);
        for (size_t i = 0; i < d; ++i) z[i] = p[i];
        out.push_back(std::move(z));
      }
      return out;
    }
  }
  std::vector<std::vector<bigint>> full(pts.begin(), pts.end());
  std::vector<std::vector<bigint>> out;
  canon_run<bigint>(full, d, meter, out);
  return out;
}

namespace {

constexpr size_t kMemoShards = 32;

struct MemoShard {
  std::mutex mutex;
  std::unordered_map<std::string, bool> verdicts;
};

struct SearchShared {
  ipts universe;
  std::vector<qvec> universe_q;
  size_t dim = 0;
  int64_t num_vertices = 0;
  std::atomic<int64_t> spent{0};
  int64_t budget = 0;
  std::atomic<bool> aborted{false};
  std::atomic<size_t> next_task{0};
  size_t task_count = 0;
  std::mutex merge_mutex;
  std::set<std::vector<zvec>> classes;
  int64_t nodes = 0;
  // viability is invariant under unimodular maps, so verdicts are shared
  // between all subsets with the same canonical form
  std::array<MemoShard, kMemoShards> memo;
};

std::string memo_key(const ipts& canon) {
  std::string key;
  key.reserve(canon.size() * canon[0].size() * sizeof(int64_t));
  for (const auto& p : canon)
    for (int64_t x : p)
      key.append(reinterpret_cast<const char*>(&x), sizeof x);
  return key;
}

std::vector<zvec> to_zpoints(const ipts& pts) {
  std::vector<zvec> out;
  for (const auto& p : pts) {
    zvec z(p.size());
    for (size_t i = 0; i < p.size(); ++i) z[i] = p[i];
    out.push_back(std::move(z));
  }
  return out;
}

// memo key of the canonical form, filling canon_out on request; reruns with
// big integers when the fast reduction overflows, with a disjoint key space
void canon_key(const ipts& verts, size_t d, std::string& key,
               std::vector<zvec>* canon_out) {
  BudgetMeter meter(kDefaultBudget, "canonical form");
  ipts fast;
  if (fast_canonical(verts, d, meter, fast)) {
    key = memo_key(fast);
    if (canon_out) *canon_out = to_zpoints(fast);
    return;
  }
  std::vector<std::vector<bigint>> big;
  canon_run<bigint>(to_zpoints(verts), d, meter, big);
  key = "B";
  for (const auto& p : big)
    for (const auto& x : p) {
      key += x.str();
      key += ',';
    }
  if (canon_out) *canon_out = std::move(big);
}

// viable = all points extreme and the hull hollow, both inherited by every
// subset, so a non-viable prefix can never grow into a solution
bool subset_viable(SearchShared& sh, const std::vector<size_t>& chosen,
                   std::vector<zvec>* canon_out) {
  ipts verts;
  verts.reserve(chosen.size());
  for (size_t idx : chosen) verts.push_back(sh.universe[idx]);
  std::string key;
  if (chosen.size() <= 2) {
    if (canon_out) canon_key(verts, sh.dim, key, canon_out);
    return true;
  }
  // affinely independent sets are simplices: always in convex position and
  // hollow, since the barycentric coordinates of a simplex point in the
  // vertex lattice are integers summing to one
  if (chosen.size() <= sh.dim + 1 &&
      diff_rank(verts, sh.dim) == verts.size() - 1) {
    if (canon_out) canon_key(verts, sh.dim, key, canon_out);
    return true;
  }
  canon_key(verts, sh.dim, key, canon_out);
  MemoShard& shard = sh.memo[std::hash<std::string>{}(key) % kMemoShards];
  {
    std::lock_guard<std::mutex> lock(shard.mutex);
    auto it = shard.verdicts.find(key);
    if (it != shard.verdicts.end()) return it->second;
  }
  std::vector<qvec> pts;
  for (size_t idx : chosen) pts.push_back(sh.universe_q[idx]);
  PolytopeQ hull = hull_and_faces(pts, kDefaultBudget);
  bool viable = hull.vertices.size() == chosen.size() &&
                is_hollow(hull, kDefaultBudget).hollow;
  {
    std::lock_guard<std::mutex> lock(shard.mutex);
    shard.verdicts.emplace(key, viable);
  }
  return viable;
}

// grows the chosen index set in increasing order; every prefix of a valid
// vertex set is itself in convex position and hollow, so failing either
// check cuts the branch without losing solutions
void search_dfs(SearchShared& sh, std::vector<size_t>& chosen,
                std::set<std::vector<zvec>>& local, int64_t& local_nodes,
                size_t start) {
  if (sh.aborted.load(std::memory_order_relaxed)) return;
  const size_t need = static_cast<size_t>(sh.num_vertices) - chosen.size();
  if (need == 0) return;
  const size_t last_start = sh.universe.size() - need;
  for (size_t idx = start; idx <= last_start; ++idx) {
    if (sh.spent.fetch_add(1, std::memory_order_relaxed) >= sh.budget) {
      sh.aborted.store(true, std::memory_order_relaxed);
      return;
    }
    ++local_nodes;
    chosen.push_back(idx);
    std::vector<zvec> canon;
    bool is_leaf = need == 1;
    if (subset_viable(sh, chosen, is_leaf ? &canon : nullptr)) {
      if (is_leaf)
        local.insert(std::move(canon));
      else
        search_dfs(sh, chosen, local, local_nodes, idx + 1);
    }
    chosen.pop_back();
    if (sh.aborted.load(std::memory_order_relaxed)) return;
  }
}

// tasks fix the first one or two chosen points so subtrees are small
// enough to spread over the workers; flat ids enumerate pairs (i, j) in
// lexicographic order when num_vertices >= 2
void run_task(SearchShared& sh, size_t task,
              std::set<std::vector<zvec>>& local, int64_t& local_nodes) {
  const size_t n = sh.universe.size();
  const size_t need = static_cast<size_t>(sh.num_vertices);
  std::vector<size_t> chosen;
  if (need == 1) {
    chosen.push_back(task);
  } else {
    size_t i = 0;
    size_t t = task;
    while (t >= n - 1 - i) {
      t -= n - 1 - i;
      ++i;
    }
    size_t j = i + 1 + t;
    if (n - i < need || n - j < need - 1) return;
    chosen.push_back(i);
    chosen.push_back(j);
  }
  if (sh.spent.fetch_add(1, std::memory_order_relaxed) >= sh.budget) {
    sh.aborted.store(true, std::memory_order_relaxed);
    return;
  }
  ++local_nodes;
  std::vector<zvec> canon;
  bool is_leaf = chosen.size() == need;
  if (subset_viable(sh, chosen, is_leaf ? &canon : nullptr)) {
    if (is_leaf)
      local.insert(std::move(canon));
    else
      search_dfs(sh, chosen, local, local_nodes, chosen.back() + 1);
  }
}

void search_worker(SearchShared& sh) {
  std::set<std::vector<zvec>> local;
  int64_t local_nodes = 0;
  while (true) {
    size_t task = sh.next_task.fetch_add(1, std::memory_order_relaxed);
    if (task >= sh.task_count) break;
    if (sh.aborted.load(std::memory_order_relaxed)) break;
    try {
      run_task(sh, task, local, local_nodes);
    } catch (const BudgetError&) {
      sh.aborted.store(true, std::memory_order_relaxed);
    }
  }
  std::lock_guard<std::mutex> lock(sh.merge_mutex);
  sh.classes.insert(local.begin(), local.end());
  sh.nodes += local_nodes;
}

}  // namespace

HollowSearchResult search_hollow(int64_t d, int64_t box_radius,
                                 int64_t num_vertices, int64_t jobs,
                                 int64_t budget) {
  if (d < 1) throw std::invalid_argument("search_hollow: dimension < 1");
  if (box_radius < 0)
    throw std::invalid_argument("search_hollow: negative box radius");
  if (num_vertices < 1)
    throw std::invalid_argument("search_hollow: need at least one vertex");
  if (jobs < 1) throw std::invalid_argument("search_hollow: jobs < 1");
  if (budget <= 0) throw std::invalid_argument("search_hollow: empty budget");
  int64_t universe_size = 1;
  for (int64_t i = 0; i < d; ++i) {
    universe_size *= box_radius + 1;
    if (universe_size > 10000000)
      throw std::invalid_argument("search_hollow: box has too many points");
  }

  SearchShared sh;
  sh.dim = static_cast<size_t>(d);
  sh.num_vertices = num_vertices;
  sh.budget = budget;
  ivec point(d, 0);
  while (true) {
    sh.universe.push_back(point);
    int64_t pos = d - 1;
    while (pos >= 0 && point[pos] == box_radius) point[pos--] = 0;
    if (pos < 0) break;
    point[pos] += 1;
  }
  for (const auto& p : sh.universe) {
    qvec q(p.size());
    for (size_t i = 0; i < p.size(); ++i) q[i] = rat(p[i]);
    sh.universe_q.push_back(std::move(q));
  }

  HollowSearchResult result;
  if (static_cast<size_t>(num_vertices) > sh.universe.size()) return result;

  const size_t n = sh.universe.size();
  sh.task_count = num_vertices == 1 ? n : n * (n - 1) / 2;
  size_t workers = static_cast<size_t>(jobs);
  workers = std::min(workers, sh.task_count);
  if (workers <= 1) {
    search_worker(sh);
  } else {
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w)
      pool.emplace_back([&sh] { search_worker(sh); });
    for (auto& t : pool) t.join();
  }

  result.complete = !sh.aborted.load();
  result.nodes = sh.nodes;
  result.classes.assign(sh.classes.begin(), sh.classes.end());
  return result;
}

}  // namespace egz

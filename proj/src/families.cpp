#include "hamq/families.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "hamq/error.hpp"

namespace hamq {

const char *to_string(FamilyKind k) { return k == FamilyKind::S ? "S" : "T"; }

const char *to_string(FamilyClass c) {
  switch (c) {
  case FamilyClass::S1:
    return "S1";
  case FamilyClass::T1:
    return "T1";
  case FamilyClass::S2:
    return "S2";
  case FamilyClass::T2:
    return "T2";
  }
  return "?";
}

FamilyClass parse_family_class(const std::string &s) {
  if (s == "S1")
    return FamilyClass::S1;
  if (s == "T1")
    return FamilyClass::T1;
  if (s == "S2")
    return FamilyClass::S2;
  if (s == "T2")
    return FamilyClass::T2;
  throw BadParameters("unknown class '" + s + "' (expected S1, T1, S2 or T2)");
}

FamilyKind kind_of(FamilyClass c) {
  return (c == FamilyClass::S1 || c == FamilyClass::S2) ? FamilyKind::S : FamilyKind::T;
}

bool is_first_class(FamilyClass c) { return c == FamilyClass::S1 || c == FamilyClass::T1; }

namespace {

std::vector<Vertex> touched_split(const FamilyHandle &h, const std::vector<Vertex> &part,
                                  bool want_touched) {
  std::set<Vertex> touched;
  for (const auto &e : h.deleted) {
    touched.insert(e.u);
    touched.insert(e.v);
  }
  std::vector<Vertex> out;
  for (Vertex v : part)
    if (touched.contains(v) == want_touched)
      out.push_back(v);
  return out;
}

void check_family_parameters(int n, int k) {
  if (n < 5 || k < 2 || 2 * k > n)
    throw BadParameters("family needs n >= 5 and 2 <= k <= n/2 (got n=" + std::to_string(n) +
                        ", k=" + std::to_string(k) + ")");
}

EdgeSet clique_edges(int first, int last) {
  std::vector<Edge> es;
  for (int u = first; u < last; ++u)
    for (int v = u + 1; v < last; ++v)
      es.emplace_back(u, v);
  return EdgeSet(std::move(es));
}

std::vector<Vertex> range(int first, int last) {
  std::vector<Vertex> out(last - first);
  std::iota(out.begin(), out.end(), first);
  return out;
}

mpz_class binomial(long long n, long long r) {
  if (r < 0 || r > n)
    return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

} // namespace

std::vector<Vertex> FamilyHandle::Y1() const { return touched_split(*this, Y, false); }
std::vector<Vertex> FamilyHandle::Y2() const { return touched_split(*this, Y, true); }
std::vector<Vertex> FamilyHandle::Z1() const { return touched_split(*this, Z, false); }
std::vector<Vertex> FamilyHandle::Z2() const { return touched_split(*this, Z, true); }

std::vector<long long> FamilyHandle::big_clique_indicator() const {
  std::vector<long long> c(n, 0);
  for (Vertex v : Y)
    c[v] = 1;
  for (Vertex v : Z)
    c[v] = 1;
  return c;
}

FamilyHandle build_S(int n, int k) {
  check_family_parameters(n, k);
  FamilyHandle h;
  h.kind = FamilyKind::S;
  h.n = n;
  h.k = k;
  h.graph = join(complete(k), disjoint_union(complete(n - 2 * k + 1), empty_graph(k - 1)));
  h.Y = range(0, k);
  h.Z = range(k, n - k + 1);
  h.X = range(n - k + 1, n);
  h.E0 = std::make_shared<const EdgeSet>(clique_edges(0, n - k + 1));
  return h;
}

FamilyHandle build_T(int n, int k) {
  check_family_parameters(n, k);
  FamilyHandle h;
  h.kind = FamilyKind::T;
  h.n = n;
  h.k = k;
  h.graph = join(complete(2), disjoint_union(complete(n - k - 1), complete(k - 1)));
  h.Y = range(0, 2);
  h.Z = range(2, n - k + 1);
  h.X = range(n - k + 1, n);
  h.E0 = std::make_shared<const EdgeSet>(clique_edges(0, n - k + 1));
  return h;
}

FamilyHandle build_host(FamilyKind kind, int n, int k) {
  return kind == FamilyKind::S ? build_S(n, k) : build_T(n, k);
}

FamilyHandle family_member(const FamilyHandle &base, const EdgeSet &e) {
  if (!base.deleted.empty())
    throw BadParameters("family_member needs an undeleted host");
  for (const auto &edge : e)
    if (!base.E0->contains(edge))
      throw NotInE0("edge " + std::to_string(edge.u) + "-" + std::to_string(edge.v) +
                    " is not inside Y u Z");
  FamilyHandle h = base;
  h.graph = delete_edges(base.graph, e);
  h.deleted = e;
  return h;
}

int class_bound(FamilyClass c, int k) {
  if (k < 2)
    throw BadParameters("class_bound needs k >= 2");
  int base = kind_of(c) == FamilyKind::S ? k * (k - 1) / 4 : (k - 1) / 2;
  return is_first_class(c) ? base : base + 1;
}

bool admissible_deletions(FamilyClass c, int k, std::size_t deleted) {
  auto b = static_cast<std::size_t>(class_bound(c, k));
  return is_first_class(c) ? deleted <= b : deleted == b;
}

mpz_class class_size(FamilyClass c, int n, int k) {
  check_family_parameters(n, k);
  long long e0 = static_cast<long long>(n - k + 1) * (n - k) / 2;
  int b = class_bound(c, k);
  if (!is_first_class(c))
    return binomial(e0, b);
  mpz_class total = 0;
  for (int s = 0; s <= b; ++s)
    total += binomial(e0, s);
  return total;
}

ClassEnumerator::ClassEnumerator(FamilyClass c, int n, int k, Exhaustive mode)
    : cls_(c), host_(build_host(kind_of(c), n, k)), exhaustive_(true) {
  if (class_size(c, n, k) > mode.budget)
    throw BudgetExceeded("class " + std::string(to_string(c)) + " has " +
                         class_size(c, n, k).get_str() + " members, over the budget of " +
                         std::to_string(mode.budget));
  max_size_ = class_bound(c, k);
  size_ = is_first_class(c) ? 0 : max_size_;
}

ClassEnumerator::ClassEnumerator(FamilyClass c, int n, int k, Sample mode)
    : cls_(c), host_(build_host(kind_of(c), n, k)), exhaustive_(false),
      rng_(SplitMix64(mode.seed)), remaining_(mode.count) {
  max_size_ = class_bound(c, k);
  if (static_cast<std::size_t>(max_size_) > host_.E0->size())
    throw BadParameters("class bound exceeds |E0|");
  if (is_first_class(c))
    for (int s = 0; s <= max_size_; ++s)
      size_weights_.push_back(binomial(static_cast<long long>(host_.E0->size()), s).get_d());
}

bool ClassEnumerator::advance_combination() {
  const std::size_t pool = host_.E0->size();
  if (!started_) {
    started_ = true;
    if (static_cast<std::size_t>(size_) > pool)
      return false;
    combo_.resize(size_);
    std::iota(combo_.begin(), combo_.end(), 0);
    return true;
  }
  // next r-combination in lexicographic order
  int r = static_cast<int>(combo_.size());
  int i = r - 1;
  while (i >= 0 && combo_[i] == pool - r + i)
    --i;
  if (i >= 0) {
    ++combo_[i];
    for (int j = i + 1; j < r; ++j)
      combo_[j] = combo_[j - 1] + 1;
    return true;
  }
  if (size_ >= max_size_ || static_cast<std::size_t>(size_ + 1) > pool)
    return false;
  ++size_;
  combo_.resize(size_);
  std::iota(combo_.begin(), combo_.end(), 0);
  return true;
}

std::optional<FamilyHandle> ClassEnumerator::next() {
  const auto &e0 = host_.E0->edges();
  if (exhaustive_) {
    if (done_ || !advance_combination()) {
      done_ = true;
      return std::nullopt;
    }
    std::vector<Edge> del;
    for (auto i : combo_)
      del.push_back(e0[i]);
    return family_member(host_, EdgeSet(std::move(del)));
  }
  if (remaining_ == 0)
    return std::nullopt;
  --remaining_;
  int s = max_size_;
  if (!size_weights_.empty()) {
    double total = std::accumulate(size_weights_.begin(), size_weights_.end(), 0.0);
    double r = rng_->unit() * total;
    s = 0;
    while (s < max_size_ && r >= size_weights_[s]) {
      r -= size_weights_[s];
      ++s;
    }
  }
  std::vector<Edge> del;
  for (auto i : random_subset(e0.size(), static_cast<std::size_t>(s), *rng_))
    del.push_back(e0[i]);
  return family_member(host_, EdgeSet(std::move(del)));
}

void for_each_member(ClassEnumerator &e, const std::function<void(const FamilyHandle &)> &fn) {
  while (auto h = e.next())
    fn(*h);
}

std::vector<FamilyHandle> orbit_representatives(FamilyClass c, int n, int k) {
  FamilyHandle host = build_host(kind_of(c), n, k);
  const int b = class_bound(c, k);
  const int ny = static_cast<int>(host.Y.size());
  const int nz_model = std::min<int>(static_cast<int>(host.Z.size()), 2 * b);
  // Y and Z are contiguous from 0, so the model host is a prefix.
  const int model = ny + nz_model;
  std::vector<Edge> pool;
  for (int u = 0; u < model; ++u)
    for (int v = u + 1; v < model; ++v)
      pool.emplace_back(u, v);
  const int lo = is_first_class(c) ? 0 : b;
  mpz_class work = 0;
  for (int s = lo; s <= b; ++s)
    work += binomial(static_cast<long long>(pool.size()), s);
  if (work > 2'000'000 || b > 4)
    throw BudgetExceeded("orbit enumeration too large for class bound " + std::to_string(b));

  auto canonical = [&](const std::vector<Edge> &del) {
    std::vector<Vertex> ty, tz;
    for (const auto &e : del)
      for (Vertex v : {e.u, e.v})
        (v < ny ? ty : tz).push_back(v);
    std::sort(ty.begin(), ty.end());
    ty.erase(std::unique(ty.begin(), ty.end()), ty.end());
    std::sort(tz.begin(), tz.end());
    tz.erase(std::unique(tz.begin(), tz.end()), tz.end());
    std::vector<Edge> best;
    std::vector<Vertex> label(model, -1);
    do {
      do {
        for (std::size_t i = 0; i < ty.size(); ++i)
          label[ty[i]] = static_cast<Vertex>(i);
        for (std::size_t i = 0; i < tz.size(); ++i)
          label[tz[i]] = ny + static_cast<Vertex>(i);
        std::vector<Edge> mapped;
        for (const auto &e : del)
          mapped.emplace_back(label[e.u], label[e.v]);
        std::sort(mapped.begin(), mapped.end());
        if (best.empty() || mapped < best)
          best = mapped;
      } while (std::next_permutation(tz.begin(), tz.end()));
    } while (std::next_permutation(ty.begin(), ty.end()));
    return best;
  };

  std::set<std::vector<Edge>> seen;
  std::vector<FamilyHandle> reps;
  for (int s = lo; s <= b; ++s) {
    if (static_cast<std::size_t>(s) > pool.size())
      break;
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      std::vector<Edge> del;
      for (auto i : idx)
        del.push_back(pool[i]);
      auto key = canonical(del);
      if (seen.insert(key).second)
        reps.push_back(family_member(host, EdgeSet(key)));
      int i = s - 1;
      while (i >= 0 && idx[i] == pool.size() - s + i)
        --i;
      if (i < 0)
        break;
      ++idx[i];
      for (int j = i + 1; j < s; ++j)
        idx[j] = idx[j - 1] + 1;
    }
  }
  return reps;
}

namespace {

// Missing pairs inside `rest`, or nullopt once more than `limit` are found.
std::optional<EdgeSet> missing_inside(const Graph &g, const std::vector<Vertex> &rest,
                                      std::size_t limit) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < rest.size(); ++i)
    for (std::size_t j = i + 1; j < rest.size(); ++j)
      if (!g.adjacent(rest[i], rest[j])) {
        out.emplace_back(rest[i], rest[j]);
        if (out.size() > limit)
          return std::nullopt;
      }
  return EdgeSet(std::move(out));
}

std::vector<Vertex> complement_of(int n, const std::vector<Vertex> &a) {
  std::vector<char> in(n, 0);
  for (Vertex v : a)
    in[v] = 1;
  std::vector<Vertex> out;
  for (Vertex v = 0; v < n; ++v)
    if (!in[v])
      out.push_back(v);
  return out;
}

} // namespace

std::optional<FamilyWitness> membership(const Graph &g, FamilyClass c, int k) {
  const int n = g.n();
  if (n < 5 || k < 2 || 2 * k > n)
    return std::nullopt;
  const FamilyKind kind = kind_of(c);
  const auto bound = static_cast<std::size_t>(class_bound(c, k));

  // group degree-k vertices by open (S) or closed (T) neighbourhood
  std::map<std::vector<Vertex>, std::vector<Vertex>> groups;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) != k)
      continue;
    auto nb = g.neighbors(v);
    if (kind == FamilyKind::T) {
      nb.push_back(v);
      std::sort(nb.begin(), nb.end());
    }
    groups[nb].push_back(v);
  }
  for (const auto &[nb, members] : groups) {
    if (static_cast<int>(members.size()) < k - 1)
      continue;
    FamilyWitness w;
    w.kind = kind;
    w.k = k;
    w.X.assign(members.begin(), members.begin() + (k - 1));
    if (kind == FamilyKind::S) {
      w.Y = nb;
    } else {
      std::set_difference(nb.begin(), nb.end(), w.X.begin(), w.X.end(), std::back_inserter(w.Y));
    }
    auto rest = complement_of(n, w.X);
    // host edges outside the big clique are X-Y (and X-X for T), all present
    long long outside = static_cast<long long>(k) * (k - 1);
    if (kind == FamilyKind::T)
      outside = 2LL * (k - 1) + static_cast<long long>(k - 1) * (k - 2) / 2;
    long long clique = static_cast<long long>(n - k + 1) * (n - k) / 2;
    long long missing = clique - (g.m() - outside);
    if (missing < 0 || !admissible_deletions(c, k, static_cast<std::size_t>(missing)))
      continue;
    auto del = missing_inside(g, rest, bound);
    if (!del || static_cast<long long>(del->size()) != missing)
      continue;
    w.missing = std::move(*del);
    std::set_difference(rest.begin(), rest.end(), w.Y.begin(), w.Y.end(), std::back_inserter(w.Z));
    return w;
  }
  return std::nullopt;
}

std::optional<FamilyWitness> spanning_subgraph_of(const Graph &g, FamilyKind kind, int k,
                                                  std::uint64_t budget) {
  const int n = g.n();
  if (n < 5 || k < 2 || 2 * k > n)
    return std::nullopt;
  // S: Y has k vertices and contains N(x) for all x in X.
  // T: X u Y has k+1 vertices and contains N[x] for all x in X.
  const int window = kind == FamilyKind::S ? k : k + 1;
  std::uint64_t spent = 0;
  for (Vertex x = 0; x < n; ++x) {
    if (g.degree(x) > k)
      continue;
    std::vector<Vertex> core = g.neighbors(x);
    if (kind == FamilyKind::T)
      core.insert(std::lower_bound(core.begin(), core.end(), x), x);
    const int extra = window - static_cast<int>(core.size());
    if (extra < 0)
      continue;
    std::vector<char> in_core(n, 0);
    for (Vertex v : core)
      in_core[v] = 1;
    std::vector<Vertex> others;
    for (Vertex v = 0; v < n; ++v)
      if (!in_core[v] && v != x)
        others.push_back(v);
    if (static_cast<int>(others.size()) < extra)
      continue;
    std::vector<std::size_t> idx(extra);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      if (++spent > budget)
        throw BudgetExceeded("spanning_subgraph_of exceeded its candidate budget");
      std::vector<char> in_w = in_core;
      for (auto i : idx)
        in_w[others[i]] = 1;
      // vertices whose whole neighbourhood fits the window
      std::vector<Vertex> fits;
      for (Vertex w = 0; w < n; ++w) {
        bool inside_ok = kind == FamilyKind::S ? !in_w[w] : static_cast<bool>(in_w[w]);
        if (!inside_ok || g.degree(w) > k)
          continue;
        bool ok = true;
        for (Vertex u : g.neighbors(w))
          if (!in_w[u]) {
            ok = false;
            break;
          }
        if (ok)
          fits.push_back(w);
      }
      if (static_cast<int>(fits.size()) >= k - 1) {
        FamilyWitness wit;
        wit.kind = kind;
        wit.k = k;
        // keep x in X
        wit.X.push_back(x);
        for (Vertex w : fits)
          if (w != x && static_cast<int>(wit.X.size()) < k - 1)
            wit.X.push_back(w);
        std::sort(wit.X.begin(), wit.X.end());
        std::vector<char> in_x(n, 0);
        for (Vertex v : wit.X)
          in_x[v] = 1;
        for (Vertex v = 0; v < n; ++v) {
          if (in_x[v])
            continue;
          (in_w[v] ? wit.Y : wit.Z).push_back(v);
        }
        // host edges absent from g
        std::vector<Edge> miss;
        std::vector<Vertex> big = wit.Y;
        big.insert(big.end(), wit.Z.begin(), wit.Z.end());
        std::sort(big.begin(), big.end());
        for (std::size_t i = 0; i < big.size(); ++i)
          for (std::size_t j = i + 1; j < big.size(); ++j)
            if (!g.adjacent(big[i], big[j]))
              miss.emplace_back(big[i], big[j]);
        for (Vertex xv : wit.X) {
          for (Vertex y : wit.Y)
            if (!g.adjacent(xv, y))
              miss.emplace_back(xv, y);
          if (kind == FamilyKind::T)
            for (Vertex x2 : wit.X)
              if (xv < x2 && !g.adjacent(xv, x2))
                miss.emplace_back(xv, x2);
        }
        wit.missing = EdgeSet(std::move(miss));
        return wit;
      }
      int i = extra - 1;
      while (i >= 0 && idx[i] == others.size() - extra + i)
        --i;
      if (i < 0)
        break;
      ++idx[i];
      for (int j = i + 1; j < extra; ++j)
        idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

Thresholds thresholds(int k) {
  if (k < 2)
    throw BadParameters("thresholds need k >= 2");
  Thresholds t;
  t.k = k;
  const long long kk = k;
  t.n_min = kk * kk * kk * kk + 5 * kk * kk * kk + 2 * kk * kk + 8 * kk + 12;
  t.order_edge = 11 * kk;
  return t;
}

AppendixReport appendix_check(int k, long long n) {
  if (k < 2)
    throw BadParameters("appendix_check needs k >= 2");
  if (n <= 2LL * k)
    throw BadParameters("appendix_check needs n > 2k");
  AppendixReport r;
  r.k = k;
  r.n = n;
  r.branch = k % 4;
  r.primed = r.branch == 2 || r.branch == 3;
  r.hypothesis_met = n >= thresholds(k).n_min;
  const long long s = k / 4;
  switch (r.branch) {
  case 0:
    r.deleted = s * (4 * s - 1) + 1;
    break;
  case 1:
    r.deleted = s * (4 * s + 1) + 1;
    break;
  case 2:
    r.deleted = 4 * s * s + 3 * s + 1;
    break;
  default:
    r.deleted = 4 * s * s + 5 * s + 2;
    break;
  }
  const mpz_class K = k, N = static_cast<long>(n);
  const mpz_class K2 = K * K, K3 = K2 * K, K4 = K3 * K, K5 = K4 * K, K6 = K5 * K;
  const mpz_class quad = 4 * N * N - 16 * K * N + 16 * K2;
  r.A1 = Rational(2 * K3 - 2 * K2, 2 * N - 3 * K - 1);
  r.A2 = Rational(K4 - K3, 4 * N * N - (12 * K + 4) * N + 9 * K2 + 6 * K + 1);
  if (!r.primed) {
    r.A3 = Rational(K4 + 5 * K3 + 4 * K2 + 18 * K + 24, N - 2 * K);
    r.A4 = Rational(K6 + 11 * K5 + 40 * K4 + 72 * K3 + 156 * K2 + 252 * K + 144, quad);
    r.bound = 4;
  } else {
    r.A3 = Rational(K4 + 5 * K3 + 2 * K2 + 6 * K + 12, N - 2 * K);
    r.A4 = Rational(K6 + 11 * K5 + 38 * K4 + 48 * K3 + 60 * K2 + 108 * K + 72, quad);
    r.bound = 2;
  }
  for (Rational *a : {&r.A1, &r.A2, &r.A3, &r.A4})
    a->canonicalize();
  r.margin = Rational(r.bound) - (r.A1 + r.A2 + r.A3 - r.A4);
  r.holds = r.margin > 0;
  return r;
}

Rational appendix_unexpanded_gap(int k, long long n) {
  if (k < 2 || n <= 2LL * k)
    throw BadParameters("appendix gap needs k >= 2 and n > 2k");
  const Rational K = k, N = static_cast<long>(n);
  Rational up = 1 + K / (2 * N - 3 * K - 1);
  Rational down = 1 - (K * K + 6 * K + 6) / (2 * (N - 2 * K));
  int br = k % 4;
  Rational weight = K * (K - 1) + ((br == 0 || br == 1) ? 4 : 2);
  return K * (K - 1) * up * up - weight * down * down;
}

nlohmann::ordered_json to_json(const FamilyHandle &h) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(h.kind);
  j["n"] = h.n;
  j["k"] = h.k;
  j["X"] = h.X;
  j["Y"] = h.Y;
  j["Z"] = h.Z;
  auto edges = nlohmann::ordered_json::array();
  for (const auto &e : h.deleted)
    edges.push_back({e.u, e.v});
  j["deleted"] = edges;
  return j;
}

nlohmann::ordered_json to_json(const FamilyWitness &w) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(w.kind);
  j["k"] = w.k;
  j["X"] = w.X;
  j["Y"] = w.Y;
  j["Z"] = w.Z;
  auto edges = nlohmann::ordered_json::array();
  for (const auto &e : w.missing)
    edges.push_back({e.u, e.v});
  j["missing"] = edges;
  return j;
}

} // namespace hamq

#include <algorithm>

#include "hardness_util.hpp"

namespace slpkit {

using detail::finish;
using detail::ipow;
using detail::prov;

std::uint64_t lcs_distance(const Str& X, const Str& Y) { return lcs_dp(X, Y).delta; }

std::uint64_t alignment_cost(const std::vector<Str>& Xs, const std::vector<Str>& Ys,
                             const std::vector<std::pair<std::uint32_t, std::uint32_t>>& lambda) {
  const std::size_t n = Xs.size(), m = Ys.size();
  if (n == 0 || m == 0) fail(Errc::InvalidArgument, "alignment: empty sequence");
  for (std::size_t t = 0; t < lambda.size(); ++t) {
    auto [i, j] = lambda[t];
    if (i < 1 || i > n || j < 1 || j > m) fail(Errc::InvalidAlignment, "alignment pair out of range");
    if (t > 0 && (i <= lambda[t - 1].first || j <= lambda[t - 1].second))
      fail(Errc::InvalidAlignment, "alignment pairs must increase on both sides");
  }
  std::uint64_t gamma = 0;
  for (const auto& x : Xs)
    for (const auto& y : Ys) gamma = std::max(gamma, lcs_distance(x, y));
  std::uint64_t cost = 0;
  for (auto [i, j] : lambda) cost += lcs_distance(Xs[i - 1], Ys[j - 1]);
  if (lambda.size() < m) return cost + (m - lambda.size()) * gamma;
  return cost + (lambda.back().first - lambda.front().first + 1 - m) * gamma;
}

namespace {

// One level of the alignment gadget: G(S) = sigma^k1 S rho^k1 with mu
// separators. The compressible form splits each mu^k2 run in half so that
// every G(S) travels with its own separators.
struct Level {
  std::uint64_t k1 = 0, k2 = 0;
  Sym sig = 0, rho = 0, mu = 0;

  static Level make(std::uint64_t lx, std::uint64_t ly, Sym base) {
    Level L;
    L.k1 = checked_mul(4, checked_add(lx, ly));
    L.k2 = checked_add(checked_mul(2, L.k1), lx);
    L.sig = base;
    L.rho = base + 1;
    L.mu = base + 2;
    return L;
  }
  std::uint64_t lo() const { return k2 / 2; }
  std::uint64_t hi() const { return k2 - k2 / 2; }

  std::uint32_t g(SlpBuilder& sb, detail::Runs& run, std::uint32_t s) const {
    return sb.cat({run(sig, k1), s, run(rho, k1)});
  }
  std::uint32_t pad(SlpBuilder& sb, detail::Runs& run, std::uint32_t s) const {
    return sb.cat({run(mu, lo()), g(sb, run, s), run(mu, hi())});
  }
  std::uint32_t xwrap(SlpBuilder& sb, detail::Runs& run, std::uint32_t mid) const {
    return sb.cat({run(mu, hi()), mid, run(mu, lo())});
  }
  std::uint32_t ywrap(SlpBuilder& sb, detail::Runs& run, std::uint64_t n, std::uint32_t mid) const {
    std::uint64_t outer = checked_mul(n, k2);
    return sb.cat({run(mu, outer + hi()), mid, run(mu, outer + lo())});
  }
  std::uint64_t C(std::uint64_t n) const { return checked_mul(checked_mul(2, n), k2); }
};

}  // namespace

AlignmentGadget lcs_alignment_gadget(const std::vector<Str>& Xs, const std::vector<Str>& Ys, std::uint32_t alphabet_size,
                                     bool compressible) {
  if (Xs.empty() || Ys.empty()) fail(Errc::InvalidArgument, "alignment gadget: empty sequence");
  if (Ys.size() > Xs.size()) fail(Errc::TypeMismatch, "alignment gadget: m > n");
  for (const auto& x : Xs)
    if (x.size() != Xs[0].size()) fail(Errc::TypeMismatch, "alignment gadget: X strings differ in length");
  for (const auto& y : Ys)
    if (y.size() != Ys[0].size()) fail(Errc::TypeMismatch, "alignment gadget: Y strings differ in length");
  for (const auto* v : {&Xs, &Ys})
    for (const auto& s : *v)
      for (Sym c : s)
        if (c >= alphabet_size) fail(Errc::SymbolOutOfRange, "alignment gadget: symbol outside the alphabet");
  const std::uint64_t n = Xs.size();
  const Level L = Level::make(Xs[0].size(), Ys[0].size(), alphabet_size);
  SlpBuilder sb(Alphabet(alphabet_size + 3));
  detail::Runs run(sb);
  std::vector<std::uint32_t> xs, ys;
  for (const auto& x : Xs) xs.push_back(sb.literal(x));
  for (const auto& y : Ys) ys.push_back(sb.literal(y));
  std::uint32_t X, Y;
  if (compressible) {
    std::vector<std::uint32_t> px, py;
    for (auto h : xs) px.push_back(L.pad(sb, run, h));
    for (auto h : ys) py.push_back(L.pad(sb, run, h));
    X = L.xwrap(sb, run, sb.cat(px));
    Y = L.ywrap(sb, run, n, sb.cat(py));
  } else {
    std::vector<std::uint32_t> px, py;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) px.push_back(run(L.mu, L.k2));
      px.push_back(L.g(sb, run, xs[i]));
    }
    py.push_back(run(L.mu, n * L.k2));
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (j) py.push_back(run(L.mu, L.k2));
      py.push_back(L.g(sb, run, ys[j]));
    }
    py.push_back(run(L.mu, n * L.k2));
    X = sb.cat(px);
    Y = sb.cat(py);
  }
  AlignmentGadget out;
  out.X = sb.build(X);
  out.Y = sb.build(Y);
  out.C = L.C(n);
  out.kappa1 = L.k1;
  out.kappa2 = L.k2;
  return out;
}

// ---- the three-level pipeline

Str LcsPipeline::coord_x(bool one) { return one ? Str{1, 1, 1, 0, 0} : Str{1, 0, 0, 1, 1}; }
Str LcsPipeline::coord_y(bool one) { return one ? Str{0, 0, 1, 1, 1} : Str{1, 1, 0, 0, 1}; }

struct LcsPipeline::Ctx {
  SlpBuilder sb{Alphabet::of("01abcdefghi")};
  detail::Runs run{sb};
  Level L1, L2, L3;
  std::uint32_t px[2] = {0, 0}, py[2] = {0, 0};  // pad(0X), pad(1X), pad(0Y), pad(1Y)
  std::map<BitVec, std::uint32_t> tgx, tgy, ntgx, ntgy;
  std::uint32_t norm = SlpBuilder::kEps;

  explicit Ctx(const LcsConstants& c) {
    L1 = Level::make(5, 5, 2);
    for (int b = 0; b < 2; ++b) {
      px[b] = L1.pad(sb, run, sb.literal(coord_x(b)));
      py[b] = L1.pad(sb, run, sb.literal(coord_y(b)));
    }
    L2.k1 = c.kappa1[1];
    L2.k2 = c.kappa2[1];
    L2.sig = 5, L2.rho = 6, L2.mu = 7;
    L3.k1 = c.kappa1[2];
    L3.k2 = c.kappa2[2];
    L3.sig = 8, L3.rho = 9, L3.mu = 10;
  }
};

LcsPipeline::LcsPipeline(const KovInstance& inst, std::uint32_t k1, std::uint32_t k2) : k1_(k1), k2_(k2) {
  inst.validate();
  if (k1 == 0 || k2 == 0 || k1 + 2 * k2 != inst.k)
    fail(Errc::InvalidArgument, "lcs-kov: need k1, k2 >= 1 with k1 + 2 k2 = k");
  d_ = inst.d + 1;
  const std::uint64_t A = inst.A.size();
  for (const auto& a : inst.A) {
    BitVec v = a;
    v.push_back(0);
    A0_.push_back(std::move(v));
  }
  const std::uint64_t K = ipow(A, k2);
  for (std::uint64_t idx = 0; idx < K; ++idx) {
    BitVec b(d_, 1), c(d_, 1);
    for (auto i : detail::tuple_of(idx, static_cast<std::uint32_t>(A), k2))
      for (std::uint32_t l = 0; l + 1 < d_; ++l) {
        b[l] &= inst.A[i][l];
        c[l] &= inst.A[i][l];
      }
    b[d_ - 1] = 0;
    c[d_ - 1] = 1;
    bs_.push_back(std::move(b));
    cs_.push_back(std::move(c));
  }

  LcsConstants& c = c_;
  c.delta0 = lcs_distance(coord_x(false), coord_y(false));
  c.delta1 = lcs_distance(coord_x(true), coord_y(true));
  for (bool x : {false, true})
    for (bool y : {false, true})
      c.gamma = std::max(c.gamma, lcs_distance(coord_x(x), coord_y(y)));
  const std::uint64_t K1 = ipow(A, k1);
  c.n1 = checked_mul(d_, K1);
  c.m1 = checked_add(checked_mul(d_ - 1, K1), 1);
  // side lengths: x = k2 + n (k2 + 2 k1) + sum |X_i|, y adds 2 n k2
  auto xlen = [](std::uint64_t k1v, std::uint64_t k2v, std::uint64_t n, std::uint64_t sum) {
    return checked_add(checked_add(k2v, checked_mul(n, checked_add(k2v, 2 * k1v))), sum);
  };
  auto ylen = [&](std::uint64_t k1v, std::uint64_t k2v, std::uint64_t n, std::uint64_t m, std::uint64_t sum) {
    return checked_add(checked_mul(checked_mul(2, n), k2v), xlen(k1v, k2v, m, sum));
  };
  Level l1 = Level::make(5, 5, 2);
  c.kappa1[0] = l1.k1;
  c.kappa2[0] = l1.k2;
  c.C = l1.C(c.n1);
  const std::uint64_t tgx = xlen(l1.k1, l1.k2, c.n1, checked_mul(5, c.n1));
  const std::uint64_t tgy = ylen(l1.k1, l1.k2, c.n1, c.m1, checked_mul(5, c.m1));
  Level l2 = Level::make(tgx, tgy, 5);
  c.kappa1[1] = l2.k1;
  c.kappa2[1] = l2.k2;
  c.C1 = l2.C(2);
  const std::uint64_t ntgx = xlen(l2.k1, l2.k2, 2, checked_mul(2, tgx));
  const std::uint64_t ntgy = ylen(l2.k1, l2.k2, 2, 1, tgy);
  Level l3 = Level::make(ntgx, ntgy, 8);
  c.kappa1[2] = l3.k1;
  c.kappa2[2] = l3.k2;
  c.C2 = l3.C(checked_mul(2, K));
  c.delta_orth = checked_add(checked_add(c.C1, c.C), checked_mul(c.m1, c.delta0));
  c.delta_non = checked_add(checked_add(c.C1, c.C), checked_add(checked_mul(c.m1 - 1, c.delta0), c.delta1));
  c.threshold = checked_add(checked_add(c.C2, checked_mul(K - 1, c.delta_non)), c.delta_orth);
}

bool LcsPipeline::orthogonal(const BitVec& b, const BitVec& c) const {
  const std::uint64_t K1 = ipow(A0_.size(), k1_);
  for (std::uint64_t idx = 0; idx < K1; ++idx) {
    BitVec a(d_, 1);
    for (auto i : detail::tuple_of(idx, static_cast<std::uint32_t>(A0_.size()), k1_))
      for (std::uint32_t l = 0; l < d_; ++l) a[l] &= A0_[i][l];
    bool orth = true;
    for (std::uint32_t l = 0; l < d_ && orth; ++l) orth = !(a[l] & b[l] & c[l]);
    if (orth) return true;
  }
  return false;
}

std::uint32_t LcsPipeline::h_tg_x(Ctx& cx, const BitVec& b) const {
  if (auto f = cx.tgx.find(b); f != cx.tgx.end()) return f->second;
  std::uint32_t mid = tuplify_into(cx.sb, A0_, d_, k1_, b, cx.px[0], cx.px[1]);
  return cx.tgx[b] = cx.L1.xwrap(cx.sb, cx.run, mid);
}

std::uint32_t LcsPipeline::h_tg_y(Ctx& cx, const BitVec& c) const {
  if (auto f = cx.tgy.find(c); f != cx.tgy.end()) return f->second;
  const std::uint64_t K1 = ipow(A0_.size(), k1_);
  std::uint32_t fill = cx.sb.pow(cx.py[0], K1 - 1);
  std::vector<std::uint32_t> parts;
  for (std::uint32_t l = 0; l + 1 < d_; ++l) {
    parts.push_back(cx.py[c[l]]);
    parts.push_back(fill);
  }
  parts.push_back(cx.py[c[d_ - 1]]);
  return cx.tgy[c] = cx.L1.ywrap(cx.sb, cx.run, c_.n1, cx.sb.cat(parts));
}

std::uint32_t LcsPipeline::h_tg_norm(Ctx& cx) const {
  if (cx.norm != SlpBuilder::kEps) return cx.norm;
  const std::uint64_t K1 = ipow(A0_.size(), k1_);
  std::uint32_t mid = cx.sb.cat(cx.sb.pow(cx.px[0], checked_mul(d_ - 1, K1)), cx.sb.pow(cx.px[1], K1));
  return cx.norm = cx.L1.xwrap(cx.sb, cx.run, mid);
}

std::uint32_t LcsPipeline::h_ntg_x(Ctx& cx, const BitVec& b) const {
  if (auto f = cx.ntgx.find(b); f != cx.ntgx.end()) return f->second;
  std::uint32_t mid = cx.sb.cat(cx.L2.pad(cx.sb, cx.run, h_tg_x(cx, b)), cx.L2.pad(cx.sb, cx.run, h_tg_norm(cx)));
  return cx.ntgx[b] = cx.L2.xwrap(cx.sb, cx.run, mid);
}

std::uint32_t LcsPipeline::h_ntg_y(Ctx& cx, const BitVec& c) const {
  if (auto f = cx.ntgy.find(c); f != cx.ntgy.end()) return f->second;
  return cx.ntgy[c] = cx.L2.ywrap(cx.sb, cx.run, 2, cx.L2.pad(cx.sb, cx.run, h_tg_y(cx, c)));
}

Slp LcsPipeline::tg_x(const BitVec& b) const {
  Ctx cx(c_);
  return cx.sb.build(h_tg_x(cx, b));
}
Slp LcsPipeline::tg_y(const BitVec& c) const {
  Ctx cx(c_);
  return cx.sb.build(h_tg_y(cx, c));
}
Slp LcsPipeline::tg_norm() const {
  Ctx cx(c_);
  return cx.sb.build(h_tg_norm(cx));
}
Slp LcsPipeline::ntg_x(const BitVec& b) const {
  Ctx cx(c_);
  return cx.sb.build(h_ntg_x(cx, b));
}
Slp LcsPipeline::ntg_y(const BitVec& c) const {
  Ctx cx(c_);
  return cx.sb.build(h_ntg_y(cx, c));
}

std::pair<Slp, Slp> LcsPipeline::final_xy() const {
  Ctx cx(c_);
  std::vector<std::uint32_t> xs;
  for (const auto& b : bs_) xs.push_back(cx.L3.pad(cx.sb, cx.run, h_ntg_x(cx, b)));
  const std::size_t K = xs.size();
  for (std::size_t i = 0; i < K; ++i) xs.push_back(xs[i]);
  std::vector<std::uint32_t> ys;
  for (const auto& c : cs_) ys.push_back(cx.L3.pad(cx.sb, cx.run, h_ntg_y(cx, c)));
  std::uint32_t X = cx.L3.xwrap(cx.sb, cx.run, cx.sb.cat(xs));
  std::uint32_t Y = cx.L3.ywrap(cx.sb, cx.run, 2 * K, cx.sb.cat(ys));
  return {cx.sb.build(X), cx.sb.build(Y)};
}

GeneratedInstance gen_lcs_from_kov(const KovInstance& inst, std::uint32_t k1, std::uint32_t k2, const GenOptions& opt) {
  LcsPipeline pl(inst, k1, k2);
  auto [X, Y] = pl.final_xy();
  const LcsConstants& c = pl.constants();
  GeneratedInstance g;
  g.reduction = "lcs-kov";
  g.expected.threshold_form = true;
  g.expected.threshold = c.threshold;
  g.expected.cmp = Cmp::Le;
  g.expected.answer = detail::source_answer([&] { return solve_source(inst, opt.caps); }, opt);
  // verifying means filling the DP table, so the cap applies to |X| |Y|
  const std::uint64_t lx = X.length(), ly = Y.length();
  const std::uint64_t N = ly != 0 && lx > UINT64_MAX / ly ? UINT64_MAX : lx * ly;
  prov(g, "source_digest", detail::digest(emit_source(inst)));
  prov(g, "A", inst.A.size());
  prov(g, "d", pl.d());
  prov(g, "k1", k1);
  prov(g, "k2", k2);
  prov(g, "delta0", c.delta0);
  prov(g, "delta1", c.delta1);
  prov(g, "gamma", c.gamma);
  for (int i = 0; i < 3; ++i) {
    prov(g, "kappa1_" + std::to_string(i + 1), c.kappa1[i]);
    prov(g, "kappa2_" + std::to_string(i + 1), c.kappa2[i]);
  }
  prov(g, "n1", c.n1);
  prov(g, "m1", c.m1);
  prov(g, "C", c.C);
  prov(g, "C1", c.C1);
  prov(g, "C2", c.C2);
  prov(g, "delta_orth", c.delta_orth);
  prov(g, "delta_non", c.delta_non);
  prov(g, "len_x", X.length());
  prov(g, "len_y", Y.length());
  prov(g, "n_x", X.size());
  prov(g, "n_y", Y.size());
  g.payload.slps.emplace("x", std::move(X));
  g.payload.slps.emplace("y", std::move(Y));
  finish(g, N, opt);
  return g;
}

}  // namespace slpkit

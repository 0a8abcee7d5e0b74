#include "rosen/transport.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace rosen {

namespace {

// forward simulation in the anchor coordinate tau in [0, len]
struct FwdPath {
  std::vector<double> tau;  // switch times, increasing, within (0,len)
  std::vector<double> val;  // value at those times
  int sigma0 = 1;
  int sigma_end = 1;
  double end_value = 0.0;
};

FwdPath simulate_forward(int n, double len, SeqStream& st, int sigma0) {
  FwdPath f;
  f.sigma0 = sigma0;
  const double rate = static_cast<double>(n) * n;
  double t = 0.0, v = 0.0;
  int sig = sigma0;
  while (true) {
    const double gap = st.exponential(rate);
    if (t + gap >= len) break;
    t += gap;
    v += sig * n * (gap);
    f.tau.push_back(t);
    f.val.push_back(v);
    sig = -sig;
  }
  f.sigma_end = sig;
  f.end_value = v + sig * n * (len - t);
  return f;
}

// assemble a TransportPath from forward pieces laid head-to-tail
struct Assembler {
  std::vector<double> tau;  // in forward coordinate, strictly increasing
  std::vector<double> val;
  double cursor = 0.0;
  double value = 0.0;
  int sigma_next = 1;  // sign of the segment starting at cursor
  bool first = true;

  void begin(int sigma0) {
    sigma_next = sigma0;
    tau.push_back(0.0);
    val.push_back(0.0);
  }
  // append one block of length len whose internal switches are f
  void append(const FwdPath& f, double len) {
    for (size_t i = 0; i < f.tau.size(); ++i) {
      tau.push_back(cursor + f.tau[i]);
      val.push_back(value + f.val[i]);
    }
    cursor += len;
    value += f.end_value;
    sigma_next = f.sigma_end;
    tau.push_back(cursor);
    val.push_back(value);
  }
};

TransportPath finalize(Assembler& as, int n, int sigma0, double lo, double hi,
                       bool anchor_right) {
  // drop interior duplicate/collinear knots (block edges without a switch)
  std::vector<double> T, V;
  T.reserve(as.tau.size());
  V.reserve(as.tau.size());
  for (size_t i = 0; i < as.tau.size(); ++i) {
    if (!T.empty() && as.tau[i] <= T.back() + 1e-15) continue;
    if (T.size() >= 2) {
      const double s1 = (V.back() - V[V.size() - 2]) / (T.back() - T[T.size() - 2]);
      const double s2 = (as.val[i] - V.back()) / (as.tau[i] - T.back());
      if (std::abs(s1 - s2) < 1e-9 * n) {  // same velocity: merge
        T.back() = as.tau[i];
        V.back() = as.val[i];
        continue;
      }
    }
    T.push_back(as.tau[i]);
    V.push_back(as.val[i]);
  }
  TransportPath Z;
  Z.n = n;
  Z.sigma0 = sigma0;
  Z.anchored_right = anchor_right;
  const size_t m = T.size();
  Z.pl.times.resize(m);
  Z.pl.values.resize(m);
  if (!anchor_right) {
    for (size_t i = 0; i < m; ++i) {
      Z.pl.times[i] = lo + T[i];
      Z.pl.values[i] = V[i];
    }
  } else {
    for (size_t i = 0; i < m; ++i) {
      Z.pl.times[i] = hi - T[m - 1 - i];
      Z.pl.values[i] = V[m - 1 - i];
    }
  }
  Z.pl.times.front() = lo;
  Z.pl.times.back() = hi;
  return Z;
}

constexpr uint64_t kSigmaCounter = ~0ULL;  // dedicated slot for the sign draw

}  // namespace

TransportPath simulate_transport(int n, double lo, double hi, CounterStream stream,
                                 bool anchor_right) {
  if (n < 1) fail(errc::n_too_small, "transport intensity must be >= 1");
  if (!(hi > lo)) fail(errc::domain, "empty transport interval");
  const double len = hi - lo;
  const int sigma0 = stream.sign(kSigmaCounter);
  SeqStream st(stream);
  Assembler as;
  as.begin(sigma0);
  FwdPath f = simulate_forward(n, len, st, sigma0);
  as.append(f, len);
  return finalize(as, n, sigma0, lo, hi, anchor_right);
}

std::vector<double> extract_gaps(const TransportPath& Z) {
  const auto& t = Z.pl.times;
  std::vector<double> gaps;
  if (t.size() < 3) return gaps;  // no interior switch
  if (!Z.anchored_right) {
    gaps.push_back(t[1] - t[0]);
    for (size_t i = 2; i + 1 < t.size(); ++i) gaps.push_back(t[i] - t[i - 1]);
  } else {
    const size_t m = t.size();
    gaps.push_back(t[m - 1] - t[m - 2]);
    for (size_t i = m - 2; i >= 2; --i) gaps.push_back(t[i] - t[i - 1]);
  }
  return gaps;
}

double default_block_mesh(int n) {
  return std::max(1.0 / n, 8.0 / (static_cast<double>(n) * n));
}

namespace {

std::map<std::pair<int, uint64_t>, std::shared_ptr<std::vector<double>>> g_tables;
std::mutex g_tables_mu;

uint64_t len_bits(double len) {
  uint64_t b;
  static_assert(sizeof(b) == sizeof(len));
  std::memcpy(&b, &len, sizeof(b));
  return b;
}

}  // namespace

const std::vector<double>& block_increment_table(int n, double len, long samples) {
  const auto key = std::make_pair(n, len_bits(len));
  {
    std::lock_guard<std::mutex> lk(g_tables_mu);
    auto it = g_tables.find(key);
    if (it != g_tables.end()) return *it->second;
  }
  auto tab = std::make_shared<std::vector<double>>();
  tab->resize(static_cast<size_t>(samples));
  CounterStream st(0x7ab1e5eedULL, static_cast<uint64_t>(n), len_bits(len));
  for (long i = 0; i < samples; ++i) {
    SeqStream seq(st.sub(static_cast<uint64_t>(i)));
    FwdPath f = simulate_forward(n, len, seq, +1);
    (*tab)[static_cast<size_t>(i)] = f.end_value;
  }
  std::sort(tab->begin(), tab->end());
  std::lock_guard<std::mutex> lk(g_tables_mu);
  auto [it, inserted] = g_tables.emplace(key, tab);
  return *it->second;
}

namespace {

double table_quantile(const std::vector<double>& tab, double u) {
  const size_t N = tab.size();
  double pos = u * (N - 1);
  pos = std::min(std::max(pos, 0.0), static_cast<double>(N - 1));
  const size_t i = std::min(static_cast<size_t>(pos), N - 2);
  const double w = pos - i;
  return tab[i] * (1.0 - w) + tab[i + 1] * w;
}

}  // namespace

TransportPath couple_transport(const GridPath& B, int n, double block_mesh, CounterStream stream,
                               bool anchor_right, const CouplingOptions& opt) {
  if (n < 1) fail(errc::n_too_small, "transport intensity must be >= 1");
  const double lo = B.lo(), hi = B.hi();
  const double len = hi - lo;
  if (!(len > 0.0)) fail(errc::domain, "empty coupling interval");
  double L = block_mesh > 0.0 ? block_mesh : default_block_mesh(n);
  if (L < 8.0 / (static_cast<double>(n) * n) - 1e-12)
    fail(errc::mesh, "block_mesh below 8/n^2: blocks must hold many switches");
  L = std::min(L, len);

  // block edges in the anchor coordinate tau; B is read at hi - tau when
  // anchored right (the reversal of a 0-anchored BM is a BM from 0)
  auto B_at = [&](double tau) {
    return anchor_right ? B.value_at(hi - tau) : B.value_at(lo + tau);
  };
  const int nblocks = std::max(1, static_cast<int>(std::floor(len / L + 0.5)));
  // one nominal block length keys a single quantile table; the last block
  // absorbs the sub-ulp remainder
  const double bl = len / nblocks;
  std::vector<double> edges(static_cast<size_t>(nblocks) + 1);
  for (int k = 0; k < nblocks; ++k) edges[k] = bl * k;
  edges[nblocks] = len;

  const auto& tab = block_increment_table(n, bl, opt.table_samples);

  const int sigma0 = stream.sign(kSigmaCounter);
  Assembler as;
  as.begin(sigma0);
  int sigma = sigma0;

  constexpr uint64_t kAttemptShift = 12;  // event counter width per attempt
  constexpr uint64_t kBlockShift = 20;    // attempts per block

  for (int k = 0; k < nblocks; ++k) {
    const double dB = B_at(edges[k + 1]) - B_at(edges[k]);
    const double u = normal_cdf(dB / std::sqrt(bl));
    const double z = sigma > 0 ? table_quantile(tab, u) : -table_quantile(tab, 1.0 - u);
    const double tol = opt.window * std::sqrt(bl);

    const double blk = edges[k + 1] - edges[k];
    FwdPath best;
    double best_err = -1.0;
    for (int att = 0; att < opt.max_attempts; ++att) {
      const uint64_t base = ((static_cast<uint64_t>(k) << kBlockShift) |
                             (static_cast<uint64_t>(att) << kAttemptShift));
      SeqStream seq(stream, base);
      FwdPath cand = simulate_forward(n, blk, seq, sigma);
      if (seq.consumed() - base >= (1ULL << kAttemptShift)) continue;  // event overflow
      const double err = std::abs(cand.end_value - z);
      if (best_err < 0.0 || err < best_err) {
        best = std::move(cand);
        best_err = err;
      }
      if (best_err <= tol) break;
    }
    as.append(best, blk);
    sigma = best.sigma_end;
  }
  return finalize(as, n, sigma0, lo, hi, anchor_right);
}

}  // namespace rosen

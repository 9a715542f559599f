#include "perp_kernel.hpp"

namespace olab::detail {

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}
std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  return add(lo, hi);
}
std::uint64_t power(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

bool reduce(const Rational& q, std::uint64_t& out) {
  // fdiv gives the least nonnegative residue, also for negative numerators.
  std::uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), kPrime);
  if (q.get_den() == 1) {
    out = n;
    return true;
  }
  std::uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), kPrime);
  if (d == 0) return false;
  out = mul(n, power(d, kPrime - 2));
  return true;
}

bool reduce(const Scalar& s, Residue& out) {
  out = {0, 0, 0, 0};
  switch (s.sfield()) {
    case Sfield::Q: return reduce(s.as_rational(), out[0]);
    case Sfield::Qi: {
      const auto& g = s.as_gaussian();
      return reduce(g.re, out[0]) && reduce(g.im, out[1]);
    }
    case Sfield::HQ: {
      const auto& q = s.as_quaternion();
      return reduce(q.a, out[0]) && reduce(q.b, out[1]) && reduce(q.c, out[2]) && reduce(q.d, out[3]);
    }
  }
  return false;
}

Residue qmul(const Residue& x, const Residue& y) {
  return {sub(sub(sub(mul(x[0], y[0]), mul(x[1], y[1])), mul(x[2], y[2])), mul(x[3], y[3])),
          sub(add(add(mul(x[0], y[1]), mul(x[1], y[0])), mul(x[2], y[3])), mul(x[3], y[2])),
          add(add(sub(mul(x[0], y[2]), mul(x[1], y[3])), mul(x[2], y[0])), mul(x[3], y[1])),
          add(sub(add(mul(x[0], y[3]), mul(x[1], y[2])), mul(x[2], y[1])), mul(x[3], y[0]))};
}

Residue qadd(const Residue& x, const Residue& y) {
  return {add(x[0], y[0]), add(x[1], y[1]), add(x[2], y[2]), add(x[3], y[3])};
}

Residue qconj(const Residue& x) { return {x[0], sub(0, x[1]), sub(0, x[2]), sub(0, x[3])}; }

std::size_t width(Sfield f) {
  switch (f) {
    case Sfield::Q: return 1;
    case Sfield::Qi: return 2;
    case Sfield::HQ: return 4;
  }
  return 4;
}

using Wide = unsigned __int128;

Wide fold(Wide x) { return (x & kPrime) + (x >> 61); }

}  // namespace

PerpKernel::PerpKernel(const HermitianSpace& h) : space_(h), width_(width(h.sfield())) {
  gram_.assign(h.dim(), std::vector<Residue>(h.dim()));
  for (std::size_t i = 0; i < h.dim(); ++i)
    for (std::size_t j = 0; j < h.dim(); ++j)
      if (!reduce(h.gram(i, j), gram_[i][j])) gram_valid_ = false;
}

ResidueRow PerpKernel::left(const Ray& x) const {
  ResidueRow row;
  if (x.is_zero()) return row;
  row.coords.resize(space_.dim() * width_);
  row.valid = true;
  Residue r;
  for (std::size_t i = 0; i < space_.dim(); ++i) {
    if (!reduce(x.rep()[i], r)) {
      row.valid = false;
      return row;
    }
    for (std::size_t c = 0; c < width_; ++c) row.coords[i * width_ + c] = r[c];
  }
  return row;
}

ResidueRow PerpKernel::right(const Ray& y) const {
  if (y.is_zero() || !gram_valid_) return {};
  std::vector<Residue> ys(space_.dim());
  for (std::size_t j = 0; j < space_.dim(); ++j)
    if (!reduce(y.rep()[j], ys[j])) return {};
  ResidueRow row;
  row.valid = true;
  row.coords.resize(space_.dim() * 2 * width_);
  for (std::size_t i = 0; i < space_.dim(); ++i) {
    Residue w{0, 0, 0, 0};
    for (std::size_t j = 0; j < space_.dim(); ++j) w = qadd(w, qmul(gram_[i][j], qconj(ys[j])));
    for (std::size_t c = 0; c < width_; ++c) {
      row.coords[i * 2 * width_ + c] = w[c];
      row.coords[i * 2 * width_ + width_ + c] = sub(0, w[c]);
    }
  }
  return row;
}

bool PerpKernel::perp(const Ray& x, const ResidueRow& lx, const Ray& y,
                      const ResidueRow& ry) const {
  if (x.is_zero() || y.is_zero()) return true;
  if (lx.valid && ry.valid) {
    const std::size_t n = space_.dim();
    const std::uint64_t* a = lx.coords.data();
    const std::uint64_t* b = ry.coords.data();
    auto m = [](std::uint64_t u, std::uint64_t v) { return static_cast<Wide>(u) * v; };
    Wide acc[4] = {0, 0, 0, 0};
    // Σ xᵢ·wᵢ with w = G·y∗; b[k] is wₖ and b[width + k] is −wₖ.
    switch (width_) {
      case 1:
        for (std::size_t i = 0; i < n; ++i) acc[0] = fold(acc[0] + m(a[i], b[2 * i]));
        break;
      case 2:
        for (std::size_t i = 0; i < n; ++i, a += 2, b += 4) {
          acc[0] = fold(acc[0] + m(a[0], b[0]) + m(a[1], b[3]));
          acc[1] = fold(acc[1] + m(a[0], b[1]) + m(a[1], b[0]));
        }
        break;
      default:
        for (std::size_t i = 0; i < n; ++i, a += 4, b += 8) {
          acc[0] = fold(acc[0] + m(a[0], b[0]) + m(a[1], b[5]) + m(a[2], b[6]) + m(a[3], b[7]));
          acc[1] = fold(acc[1] + m(a[0], b[1]) + m(a[1], b[0]) + m(a[2], b[3]) + m(a[3], b[6]));
          acc[2] = fold(acc[2] + m(a[0], b[2]) + m(a[1], b[7]) + m(a[2], b[0]) + m(a[3], b[1]));
          acc[3] = fold(acc[3] + m(a[0], b[3]) + m(a[1], b[2]) + m(a[2], b[5]) + m(a[3], b[0]));
        }
    }
    for (std::size_t c = 0; c < width_; ++c) {
      Wide v = fold(acc[c]);
      if (v != 0 && v != kPrime) return false;
    }
  }
  return herm_form(space_, x.rep(), y.rep()).is_zero();
}

}  // namespace olab::detail

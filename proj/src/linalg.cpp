#include "olab/linalg.hpp"

#include "olab/errors.hpp"

namespace olab {

Vector::Vector(Sfield f, std::vector<Scalar> coords) : field_(f), coords_(std::move(coords)) {
  for (const auto& c : coords_)
    if (c.sfield() != f)
      throw InputError("coordinate " + c.to_string() + " is not in " +
                       std::string(sfield_name(f)));
}

Vector Vector::unit(Sfield f, std::size_t n, std::size_t i) {
  Vector v(f, n);
  v[i] = Scalar::one(f);
  return v;
}

bool Vector::is_zero() const {
  for (const auto& c : coords_)
    if (!c.is_zero()) return false;
  return true;
}

std::size_t Vector::leading_index() const {
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (!coords_[i].is_zero()) return i;
  return coords_.size();
}

namespace {
void check_same(const Vector& u, const Vector& v) {
  if (u.sfield() != v.sfield() || u.size() != v.size())
    throw InputError("vector shape mismatch");
}
}  // namespace

Vector operator+(const Vector& u, const Vector& v) {
  check_same(u, v);
  Vector w = u;
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
  return w;
}

Vector operator-(const Vector& u, const Vector& v) {
  check_same(u, v);
  Vector w = u;
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] - v[i];
  return w;
}

Vector Vector::operator-() const {
  Vector w = *this;
  for (auto& c : w.coords_) c = -c;
  return w;
}

Vector operator*(const Scalar& alpha, const Vector& u) {
  if (alpha.sfield() != u.sfield()) throw InputError("scalar/vector sfield mismatch");
  Vector w = u;
  for (auto& c : w.coords_) c = alpha * c;
  return w;
}

std::string Vector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ", ";
    s += coords_[i].to_string();
  }
  return s + ")";
}

// ---------------------------------------------------------------------------

namespace {

// In-place Gauss-Jordan on `m`; columns >= ncols are carried along but never
// chosen as pivots. Returns pivot columns; nonzero rows come first.
std::vector<std::size_t> gauss_jordan(std::vector<Vector>& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col].is_zero()) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    m[row] = m[row][col].inverse() * m[row];
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      m[r] = m[r] - m[r][col] * m[row];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

void check_rows(Sfield f, std::size_t ncols, std::span<const Vector> rows) {
  for (const auto& r : rows)
    if (r.sfield() != f || r.size() != ncols) throw InputError("row shape mismatch");
}

// Rows (r | e_i) for the augmented elimination.
std::vector<Vector> augment(Sfield f, std::size_t ncols, std::span<const Vector> rows) {
  std::vector<Vector> m;
  m.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<Scalar> c = rows[i].coords();
    c.resize(ncols + rows.size(), Scalar::zero(f));
    c[ncols + i] = Scalar::one(f);
    m.emplace_back(f, std::move(c));
  }
  return m;
}

Vector tail(const Vector& v, std::size_t from) {
  return Vector(v.sfield(), std::vector<Scalar>(v.coords().begin() + static_cast<long>(from),
                                                v.coords().end()));
}

}  // namespace

Echelon reduce_rows(Sfield f, std::size_t ncols, std::span<const Vector> rows) {
  check_rows(f, ncols, rows);
  std::vector<Vector> m(rows.begin(), rows.end());
  Echelon e;
  e.pivots = gauss_jordan(m, ncols);
  m.resize(e.pivots.size(), Vector(f, ncols));
  e.rows = std::move(m);
  return e;
}

std::size_t row_rank(Sfield f, std::size_t ncols, std::span<const Vector> rows) {
  return reduce_rows(f, ncols, rows).rank();
}

std::vector<Vector> left_null_space(Sfield f, std::size_t ncols, std::span<const Vector> rows) {
  check_rows(f, ncols, rows);
  auto m = augment(f, ncols, rows);
  auto pivots = gauss_jordan(m, ncols);
  std::vector<Vector> kernel;
  for (std::size_t r = pivots.size(); r < m.size(); ++r) kernel.push_back(tail(m[r], ncols));
  return reduce_rows(f, rows.size(), kernel).rows;
}

std::optional<std::vector<Scalar>> left_solve(Sfield f, std::size_t ncols,
                                              std::span<const Vector> rows,
                                              const Vector& target) {
  check_rows(f, ncols, rows);
  if (target.sfield() != f || target.size() != ncols) throw InputError("target shape mismatch");
  auto m = augment(f, ncols, rows);
  auto pivots = gauss_jordan(m, ncols);
  // Eliminate target against the reduced rows; the tails track coefficients.
  Vector rest = target;
  std::vector<Scalar> coeff(rows.size(), Scalar::zero(f));
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    Scalar a = rest[pivots[r]];
    if (a.is_zero()) continue;
    Vector head(f, std::vector<Scalar>(m[r].coords().begin(),
                                       m[r].coords().begin() + static_cast<long>(ncols)));
    rest = rest - a * head;
    for (std::size_t i = 0; i < rows.size(); ++i) coeff[i] += a * m[r][ncols + i];
  }
  if (!rest.is_zero()) return std::nullopt;
  return coeff;
}

std::optional<std::vector<Vector>> left_inverse(Sfield f, std::span<const Vector> rows) {
  const std::size_t n = rows.size();
  check_rows(f, n, rows);
  auto m = augment(f, n, rows);
  auto pivots = gauss_jordan(m, n);
  if (pivots.size() != n) return std::nullopt;
  std::vector<Vector> inv;
  inv.reserve(n);
  for (auto& r : m) inv.push_back(tail(r, n));
  return inv;
}

}  // namespace olab

#include "qid/channel.hpp"

#include <cmath>

namespace qid {

QuantumChannel::QuantumChannel(int dim_in, int dim_out,
                               std::vector<Matrix> kraus, std::string label)
    : dim_in_(dim_in),
      dim_out_(dim_out),
      kraus_(std::move(kraus)),
      label_(std::move(label)) {
  if (dim_in_ <= 0 || dim_out_ <= 0)
    throw std::invalid_argument("channel: dimensions must be positive");
  if (kraus_.empty())
    throw std::invalid_argument("channel: Kraus family must be nonempty");
  for (const Matrix& k : kraus_) {
    if (k.rows() != dim_out_ || k.cols() != dim_in_)
      throw std::invalid_argument("channel: Kraus operator has wrong shape");
    if (!k.allFinite())
      throw std::invalid_argument("channel: Kraus entries must be finite");
  }
}

Matrix QuantumChannel::apply_matrix(const Matrix& rho) const {
  if (rho.rows() != dim_in_ || rho.cols() != dim_in_)
    throw std::invalid_argument("channel apply: dimension mismatch");
  Matrix out = Matrix::Zero(dim_out_, dim_out_);
  for (const Matrix& k : kraus_) out.noalias() += k * rho * k.adjoint();
  return out;
}

DensityOperator QuantumChannel::apply(const DensityOperator& rho) const {
  Matrix out = apply_matrix(rho.matrix());
  out = 0.5 * (out + out.adjoint());
  return DensityOperator(std::move(out));
}

Povm::Povm(std::vector<Matrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty())
    throw std::invalid_argument("povm: needs at least one outcome");
  const Eigen::Index d = elements_.front().rows();
  Matrix sum = Matrix::Zero(d, d);
  for (const Matrix& e : elements_) {
    if (e.rows() != d || e.cols() != d)
      throw std::invalid_argument("povm: elements must share one space");
    if (!is_hermitian(e, kHermTol))
      throw std::invalid_argument("povm: element not Hermitian");
    if (hermitian_eigenvalues(e).minCoeff() < -kPsdTol)
      throw std::invalid_argument("povm: element not positive");
    sum += e;
  }
  if ((sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > kTraceTol)
    throw std::invalid_argument("povm: elements must sum to the identity");
}

ValidationReport validate_cptp(const QuantumChannel& channel) {
  const int d = channel.dim_in();
  Matrix acc = Matrix::Zero(d, d);
  for (const Matrix& k : channel.kraus()) acc.noalias() += k.adjoint() * k;
  acc -= Matrix::Identity(d, d);
  acc = 0.5 * (acc + acc.adjoint());

  ValidationReport report;
  report.trace_residual = hermitian_eigenvalues(acc).cwiseAbs().maxCoeff();
  Matrix choi = choi_matrix(channel);
  report.min_choi_eigenvalue = hermitian_eigenvalues(choi).minCoeff();
  report.passes = report.trace_residual <= kTraceTol &&
                  report.min_choi_eigenvalue >= -kPsdTol;
  return report;
}

Matrix choi_matrix(const QuantumChannel& channel) {
  const int da = channel.dim_in();
  const int db = channel.dim_out();
  const Eigen::Index n = static_cast<Eigen::Index>(da) * db;
  Matrix choi = Matrix::Zero(n, n);
  // J = sum_k w_k w_k^dag with w_k the input-major vectorization of K_k.
  for (const Matrix& k : channel.kraus()) {
    Vector w(n);
    for (int i = 0; i < da; ++i)
      for (int a = 0; a < db; ++a) w[static_cast<Eigen::Index>(i) * db + a] = k(a, i);
    choi.noalias() += w * w.adjoint();
  }
  return choi;
}

namespace {

// Reduce a Kraus family to a linearly independent one describing the same
// map: Gram-Schmidt on the vectorized operators finds the rank, then the
// Gram matrix of coefficients is rotated into an orthogonal family.
std::vector<Matrix> minimal_kraus(const std::vector<Matrix>& kraus,
                                  double threshold = 1e-10) {
  const Eigen::Index rows = kraus.front().rows();
  const Eigen::Index cols = kraus.front().cols();
  const Eigen::Index len = rows * cols;

  std::vector<Vector> basis;
  std::vector<Vector> coeffs;  // coefficients of each operator in `basis`
  for (const Matrix& k : kraus) {
    Vector v = Eigen::Map<const Vector>(k.data(), len);
    Vector c = Vector::Zero(static_cast<Eigen::Index>(kraus.size()));
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Complex proj = basis[b].dot(v);
      c[static_cast<Eigen::Index>(b)] = proj;
      v -= proj * basis[b];
    }
    const double residual = v.norm();
    if (residual > threshold) {
      basis.push_back(v / residual);
      c[static_cast<Eigen::Index>(basis.size() - 1)] = residual;
    }
    coeffs.push_back(std::move(c));
  }

  const Eigen::Index r = static_cast<Eigen::Index>(basis.size());
  Matrix gram = Matrix::Zero(r, r);
  for (const Vector& c : coeffs)
    gram.noalias() += c.head(r) * c.head(r).adjoint();
  gram = 0.5 * (gram + gram.adjoint());

  const EighResult eig = eigh_descending(gram);
  std::vector<Matrix> out;
  for (Eigen::Index a = 0; a < r; ++a) {
    const double lam = eig.values[a];
    if (lam <= threshold * threshold) continue;
    Vector va = Vector::Zero(len);
    for (Eigen::Index b = 0; b < r; ++b) va += eig.vectors(b, a) * basis[b];
    va *= std::sqrt(lam);
    out.push_back(Eigen::Map<const Matrix>(va.data(), rows, cols));
  }
  if (out.empty()) out.push_back(Matrix::Zero(rows, cols));
  return out;
}

}  // namespace

std::pair<StinespringIsometry, QuantumChannel> complementary(
    const QuantumChannel& channel) {
  const int da = channel.dim_in();
  const int db = channel.dim_out();
  const std::vector<Matrix> ks = minimal_kraus(channel.kraus());
  const int de = static_cast<int>(ks.size());

  StinespringIsometry v;
  v.dim_in = da;
  v.dim_out = db;
  v.dim_env = de;
  v.matrix = Matrix::Zero(static_cast<Eigen::Index>(db) * de, da);
  for (int e = 0; e < de; ++e)
    for (int b = 0; b < db; ++b)
      for (int x = 0; x < da; ++x)
        v.matrix(static_cast<Eigen::Index>(b) * de + e, x) = ks[e](b, x);

  // Environment-side Kraus operators, one per output basis index.
  std::vector<Matrix> comp_kraus(db, Matrix::Zero(de, da));
  for (int b = 0; b < db; ++b)
    for (int e = 0; e < de; ++e)
      for (int x = 0; x < da; ++x) comp_kraus[b](e, x) = ks[e](b, x);

  QuantumChannel comp(da, de, std::move(comp_kraus),
                      channel.label().empty() ? "complement"
                                              : channel.label() + "^c");
  return {std::move(v), std::move(comp)};
}

Matrix apply_isometry(const StinespringIsometry& v, const Matrix& rho,
                      Subsystem keep) {
  if (rho.rows() != v.dim_in || rho.cols() != v.dim_in)
    throw std::invalid_argument("isometry apply: dimension mismatch");
  const Matrix joint = v.matrix * rho * v.matrix.adjoint();
  return partial_trace_matrix(joint, keep, v.dim_out, v.dim_env);
}

QuantumChannel identity_channel(int dim) {
  return QuantumChannel(dim, dim, {Matrix::Identity(dim, dim)}, "identity");
}

QuantumChannel erasure_channel(double q) {
  if (q < 0.0 || q > 1.0)
    throw std::invalid_argument("erasure channel: q must lie in [0,1]");
  Matrix embed = Matrix::Zero(3, 2);
  embed(0, 0) = 1.0;
  embed(1, 1) = 1.0;
  Matrix flag0 = Matrix::Zero(3, 2);
  flag0(2, 0) = 1.0;
  Matrix flag1 = Matrix::Zero(3, 2);
  flag1(2, 1) = 1.0;
  std::vector<Matrix> kraus{std::sqrt(1.0 - q) * embed,
                            std::sqrt(q) * flag0, std::sqrt(q) * flag1};
  return QuantumChannel(2, 3, std::move(kraus), "erasure");
}

QuantumChannel depolarizing_channel(double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("depolarizing channel: p must lie in [0,1]");
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  std::vector<Matrix> kraus{std::sqrt(1.0 - 0.75 * p) * Matrix::Identity(2, 2),
                            std::sqrt(0.25 * p) * x, std::sqrt(0.25 * p) * y,
                            std::sqrt(0.25 * p) * z};
  return QuantumChannel(2, 2, std::move(kraus), "depolarizing");
}

QuantumChannel dephasing_channel(int dim) {
  std::vector<Matrix> kraus;
  for (int b = 0; b < dim; ++b) {
    Matrix k = Matrix::Zero(dim, dim);
    k(b, b) = 1.0;
    kraus.push_back(std::move(k));
  }
  return QuantumChannel(dim, dim, std::move(kraus), "dephasing");
}

QuantumChannel classical_channel(const Eigen::MatrixXd& kernel) {
  const int ny = static_cast<int>(kernel.rows());
  const int nx = static_cast<int>(kernel.cols());
  if (ny == 0 || nx == 0)
    throw std::invalid_argument("classical channel: empty kernel");
  for (int x = 0; x < nx; ++x) {
    double col = 0.0;
    for (int y = 0; y < ny; ++y) {
      if (kernel(y, x) < -1e-12)
        throw std::invalid_argument("classical channel: negative probability");
      col += kernel(y, x);
    }
    if (std::abs(col - 1.0) > 1e-9)
      throw std::invalid_argument("classical channel: kernel not stochastic");
  }
  std::vector<Matrix> kraus;
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y) {
      if (kernel(y, x) <= 0.0) continue;
      Matrix k = Matrix::Zero(ny, nx);
      k(y, x) = std::sqrt(kernel(y, x));
      kraus.push_back(std::move(k));
    }
  return QuantumChannel(nx, ny, std::move(kraus), "classical");
}

QuantumChannel cq_channel(const std::vector<DensityOperator>& signal_states) {
  if (signal_states.empty())
    throw std::invalid_argument("cq channel: needs signal states");
  const int nx = static_cast<int>(signal_states.size());
  const int db = signal_states.front().dim();
  std::vector<Matrix> kraus;
  for (int x = 0; x < nx; ++x) {
    if (signal_states[x].dim() != db)
      throw std::invalid_argument("cq channel: signal dims differ");
    const EighResult eig = eigh_descending(signal_states[x].matrix());
    for (int j = 0; j < db; ++j) {
      const double lam = std::max(eig.values[j], 0.0);
      if (lam <= 1e-14) continue;
      Matrix k = Matrix::Zero(db, nx);
      k.col(x) = std::sqrt(lam) * eig.vectors.col(j);
      kraus.push_back(std::move(k));
    }
  }
  return QuantumChannel(nx, db, std::move(kraus), "cq");
}

QuantumChannel qc_channel(const Povm& measurement) {
  const int da = measurement.dim();
  const int ny = measurement.outcomes();
  std::vector<Matrix> kraus;
  for (int y = 0; y < ny; ++y) {
    const EighResult eig = eigh_descending(measurement.elements()[y]);
    for (int j = 0; j < da; ++j) {
      const double lam = std::max(eig.values[j], 0.0);
      if (lam <= 1e-14) continue;
      Matrix k = Matrix::Zero(ny, da);
      k.row(y) = std::sqrt(lam) * eig.vectors.col(j).adjoint();
      kraus.push_back(std::move(k));
    }
  }
  return QuantumChannel(da, ny, std::move(kraus), "qc");
}

QuantumChannel binary_symmetric_channel(double flip) {
  if (flip < 0.0 || flip > 1.0)
    throw std::invalid_argument("bsc: flip probability must lie in [0,1]");
  Eigen::MatrixXd kernel(2, 2);
  kernel << 1.0 - flip, flip, flip, 1.0 - flip;
  return classical_channel(kernel);
}

QuantumChannel make_standard(const StandardChannelSpec& spec) {
  using Kind = StandardChannelSpec::Kind;
  switch (spec.kind) {
    case Kind::Identity:
      return identity_channel(spec.dim);
    case Kind::Erasure:
      return erasure_channel(spec.noise);
    case Kind::Depolarizing:
      return depolarizing_channel(spec.noise);
    case Kind::Dephasing:
      return dephasing_channel(spec.dim);
    case Kind::Classical:
      return classical_channel(spec.kernel);
    case Kind::Cq:
      return cq_channel(spec.cq_states);
    case Kind::Qc:
      if (!spec.qc_povm)
        throw std::invalid_argument("make_standard: qc spec needs a POVM");
      return qc_channel(*spec.qc_povm);
  }
  throw std::invalid_argument("make_standard: unknown kind");
}

QuantumChannel tensor_product(const QuantumChannel& a,
                              const QuantumChannel& b) {
  std::vector<Matrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const Matrix& ka : a.kraus())
    for (const Matrix& kb : b.kraus()) kraus.push_back(kron(ka, kb));
  return QuantumChannel(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(),
                        std::move(kraus), a.label() + "(x)" + b.label());
}

QuantumChannel combine(const std::vector<QuantumChannel>& channels,
                       CombineMode mode) {
  if (channels.empty())
    throw std::invalid_argument("combine: needs at least one channel");
  if (mode == CombineMode::Tensor) {
    QuantumChannel out = channels.front();
    for (std::size_t i = 1; i < channels.size(); ++i)
      out = tensor_product(out, channels[i]);
    return out;
  }
  QuantumChannel out = channels.front();
  for (std::size_t i = 1; i < channels.size(); ++i) {
    const QuantumChannel& next = channels[i];
    if (next.dim_in() != out.dim_out())
      throw std::invalid_argument("combine: compose dimension mismatch");
    std::vector<Matrix> kraus;
    kraus.reserve(out.kraus().size() * next.kraus().size());
    for (const Matrix& k2 : next.kraus())
      for (const Matrix& k1 : out.kraus()) {
        Matrix prod = k2 * k1;
        if (prod.cwiseAbs().maxCoeff() > 1e-14) kraus.push_back(std::move(prod));
      }
    if (kraus.empty())
      kraus.push_back(Matrix::Zero(next.dim_out(), out.dim_in()));
    out = QuantumChannel(out.dim_in(), next.dim_out(), std::move(kraus),
                         next.label() + "o" + out.label());
  }
  return out;
}

Matrix random_isometry(int dim_in, int dim_out, RandomStream& rng) {
  if (dim_out < dim_in)
    throw std::invalid_argument("random isometry: dim_out must be >= dim_in");
  Matrix g(dim_out, dim_in);
  for (int r = 0; r < dim_out; ++r)
    for (int c = 0; c < dim_in; ++c) g(r, c) = Complex(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim_out, dim_in);
  return q;
}

Matrix random_unitary(int dim, RandomStream& rng) {
  return random_isometry(dim, dim, rng);
}

QuantumChannel random_channel(int dim_in, int dim_out, int kraus_count,
                              RandomStream& rng) {
  std::vector<Matrix> raw;
  Matrix acc = Matrix::Zero(dim_in, dim_in);
  for (int i = 0; i < kraus_count; ++i) {
    Matrix g(dim_out, dim_in);
    for (int r = 0; r < dim_out; ++r)
      for (int c = 0; c < dim_in; ++c)
        g(r, c) = Complex(rng.normal(), rng.normal());
    acc.noalias() += g.adjoint() * g;
    raw.push_back(std::move(g));
  }
  // Normalize so the family is exactly trace preserving.
  acc = 0.5 * (acc + acc.adjoint());
  const EighResult eig = eigh_descending(acc);
  Matrix inv_sqrt = Matrix::Zero(dim_in, dim_in);
  for (int i = 0; i < dim_in; ++i) {
    const double lam = eig.values[i];
    if (lam <= 1e-14)
      throw std::invalid_argument("random channel: degenerate draw");
    inv_sqrt.noalias() +=
        (1.0 / std::sqrt(lam)) * eig.vectors.col(i) * eig.vectors.col(i).adjoint();
  }
  std::vector<Matrix> kraus;
  for (Matrix& g : raw) kraus.push_back(g * inv_sqrt);
  return QuantumChannel(dim_in, dim_out, std::move(kraus), "random");
}

}  // namespace qid

#include "crystinv/fiber.hpp"

#include <cmath>

#include "crystinv/error.hpp"

namespace crystinv {

namespace {

void require_length(const Ambient& ambient, std::size_t n) {
  if (n != ambient.size()) throw Error(ErrorKind::SizeMismatch, "signal length differs from N^d");
}

/// One pass of a length-N DFT along `axis`. sign = -1 forward, +1 inverse.
void dft_axis(const Ambient& ambient, CVector& data, int axis, int sign, Exec exec) {
  const int n = ambient.modulus();
  const std::size_t stride = ambient.stride(axis);
  const auto lines = static_cast<std::ptrdiff_t>(ambient.size() / static_cast<std::size_t>(n));
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));

#pragma omp parallel for schedule(static) num_threads(exec.jobs) if (exec.jobs > 1)
  for (std::ptrdiff_t line = 0; line < lines; ++line) {
    const auto l = static_cast<std::size_t>(line);
    const std::size_t base = (l / stride) * stride * static_cast<std::size_t>(n) + (l % stride);
    CVector in(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) in[static_cast<std::size_t>(x)] = data[base + static_cast<std::size_t>(x) * stride];
    for (int xi = 0; xi < n; ++xi) {
      cplx acc{};
      for (int x = 0; x < n; ++x) {
        int k = (xi * x) % n;
        if (sign < 0 && k != 0) k = n - k;
        acc += ambient.root(k) * in[static_cast<std::size_t>(x)];
      }
      data[base + static_cast<std::size_t>(xi) * stride] = acc * scale;
    }
  }
}

CVector separable_transform(const Ambient& ambient, CVector data, int sign, Exec exec) {
  for (int axis = 0; axis < ambient.dimension(); ++axis) dft_axis(ambient, data, axis, sign, exec);
  return data;
}

}  // namespace

FourierCoeffs dft(const Ambient& ambient, const Signal& f, Exec exec) {
  require_length(ambient, f.values.size());
  return FourierCoeffs{separable_transform(ambient, f.values, -1, exec)};
}

Signal idft(const Ambient& ambient, const FourierCoeffs& fhat, Exec exec) {
  require_length(ambient, fhat.values.size());
  return Signal{separable_transform(ambient, fhat.values, +1, exec)};
}

namespace reference {

FourierCoeffs dft(const Ambient& ambient, const Signal& f) {
  require_length(ambient, f.values.size());
  const double scale = std::pow(static_cast<double>(ambient.modulus()), -0.5 * ambient.dimension());
  FourierCoeffs out{CVector(ambient.size())};
  for (std::size_t xi = 0; xi < ambient.size(); ++xi) {
    cplx acc{};
    for (std::size_t x = 0; x < ambient.size(); ++x) acc += std::conj(ambient.pairing(xi, x)) * f.values[x];
    out.values[xi] = acc * scale;
  }
  return out;
}

Signal idft(const Ambient& ambient, const FourierCoeffs& fhat) {
  require_length(ambient, fhat.values.size());
  const double scale = std::pow(static_cast<double>(ambient.modulus()), -0.5 * ambient.dimension());
  Signal out{CVector(ambient.size())};
  for (std::size_t x = 0; x < ambient.size(); ++x) {
    cplx acc{};
    for (std::size_t xi = 0; xi < ambient.size(); ++xi) acc += ambient.pairing(xi, x) * fhat.values[xi];
    out.values[x] = acc * scale;
  }
  return out;
}

}  // namespace reference

Signal translate(const Ambient& ambient, std::size_t k, const Signal& f) {
  require_length(ambient, f.values.size());
  Signal out{CVector(ambient.size())};
  for (std::size_t x = 0; x < ambient.size(); ++x) out.values[x] = f.values[ambient.sub(x, k)];
  return out;
}

Signal rotate(const PointGroup& group, std::size_t g, const Signal& f) {
  const std::size_t ginv = group.inv(g);
  Signal out{CVector(f.values.size())};
  for (std::size_t x = 0; x < f.values.size(); ++x) out.values[x] = f.values[group.act_space(ginv, x)];
  return out;
}

FiberVector fiber_at(const CrystalModel& model, const FourierCoeffs& fhat, std::size_t freq) {
  const auto& amb = model.ambient();
  const auto& ann = model.annihilator();
  const double scale = std::sqrt(static_cast<double>(model.lattice_size()));
  FiberVector out(ann.size());
  for (std::size_t p = 0; p < ann.size(); ++p) out[p] = scale * fhat.values[amb.add(freq, ann.elements[p])];
  return out;
}

FiberField fiberize(const CrystalModel& model, const FourierCoeffs& fhat) {
  require_length(model.ambient(), fhat.values.size());
  FiberField field{CMatrix(model.fiber_length(), model.section_size())};
  for (std::size_t omega = 0; omega < model.section_size(); ++omega) {
    auto fib = fiber_at(model, fhat, model.section().reps[omega]);
    std::copy(fib.begin(), fib.end(), field.fibers.col(omega).begin());
  }
  return field;
}

FiberField fiberize(const CrystalModel& model, const Signal& f, Exec exec) {
  return fiberize(model, dft(model.ambient(), f, exec));
}

Signal defiberize(const CrystalModel& model, const FiberField& field, Exec exec) {
  const auto& amb = model.ambient();
  const auto& ann = model.annihilator();
  if (field.fibers.rows() != ann.size() || field.fibers.cols() != model.section_size())
    throw Error(ErrorKind::SizeMismatch, "fiber field shape does not match the model");
  const double scale = 1.0 / std::sqrt(static_cast<double>(model.lattice_size()));
  FourierCoeffs fhat{CVector(amb.size())};
  for (std::size_t omega = 0; omega < model.section_size(); ++omega) {
    const std::size_t rep = model.section().reps[omega];
    for (std::size_t p = 0; p < ann.size(); ++p) fhat.values[amb.add(rep, ann.elements[p])] = scale * field.fibers(p, omega);
  }
  return idft(amb, fhat, exec);
}

double weighted_norm_squared(const CrystalModel& model, const FiberField& field) {
  const double f = frobenius_norm(field.fibers);
  return f * f / static_cast<double>(model.lattice_size());
}

GammaField fiberize_gamma(const CrystalModel& model, const Signal& f) {
  const auto fhat = dft(model.ambient(), f);
  GammaField out;
  for (const auto& orbit : model.orbits()) {
    CMatrix block(model.fiber_length(), model.group_size());
    const std::size_t rep = model.section().reps[orbit.rep];
    for (std::size_t g = 0; g < model.group_size(); ++g) {
      auto fib = fiber_at(model, fhat, model.group().act_dual(g, rep));
      std::copy(fib.begin(), fib.end(), block.col(g).begin());
    }
    out.per_orbit.push_back(std::move(block));
  }
  return out;
}

FiberField pi_rep(const CrystalModel& model, std::size_t g, const FiberField& field) {
  FiberField out{CMatrix(field.fibers.rows(), field.fibers.cols())};
  for (std::size_t omega = 0; omega < model.section_size(); ++omega) {
    auto moved = model.rho(g, omega).apply(field.fibers.col(model.act(g, omega)));
    std::copy(moved.begin(), moved.end(), out.fibers.col(omega).begin());
  }
  return out;
}

std::vector<FourierCoeffs> transform_family(const Ambient& ambient, std::span<const Signal> family, Exec exec) {
  std::vector<FourierCoeffs> hats;
  hats.reserve(family.size());
  for (const auto& f : family) hats.push_back(dft(ambient, f, exec));
  return hats;
}

CMatrix pre_gramian_at_frequency(const CrystalModel& model, std::span<const FourierCoeffs> hats, std::size_t freq) {
  if (hats.empty()) throw Error(ErrorKind::EmptyFamily, "pre-Gramian of an empty family");
  const auto& amb = model.ambient();
  const auto& ann = model.annihilator();
  const auto& group = model.group();
  const std::size_t order = group.size();
  const double scale = std::sqrt(static_cast<double>(model.lattice_size()));
  CMatrix out(ann.size(), hats.size() * order);
  // (R_g phi)^(xi) = phi^(g^* xi)
  for (std::size_t p = 0; p < ann.size(); ++p) {
    const std::size_t xi = amb.add(freq, ann.elements[p]);
    for (std::size_t g = 0; g < order; ++g) {
      const std::size_t moved = group.act_dual(g, xi);
      for (std::size_t i = 0; i < hats.size(); ++i) out(p, i * order + g) = scale * hats[i].values[moved];
    }
  }
  return out;
}

CMatrix pre_gramian(const CrystalModel& model, std::span<const FourierCoeffs> hats, std::size_t omega) {
  return pre_gramian_at_frequency(model, hats, model.section().reps[omega]);
}

CMatrix pre_gramian(const CrystalModel& model, std::span<const Signal> family, std::size_t omega) {
  if (family.empty()) throw Error(ErrorKind::EmptyFamily, "pre-Gramian of an empty family");
  const auto hats = transform_family(model.ambient(), family);
  return pre_gramian(model, hats, omega);
}

CMatrix synthesis_at(const CrystalModel& model, std::span<const FourierCoeffs> hats, std::size_t omega) {
  if (hats.empty()) throw Error(ErrorKind::EmptyFamily, "synthesis operator of an empty family");
  CMatrix out(model.fiber_length(), hats.size());
  const std::size_t rep = model.section().reps[omega];
  for (std::size_t i = 0; i < hats.size(); ++i) {
    auto fib = fiber_at(model, hats[i], rep);
    std::copy(fib.begin(), fib.end(), out.col(i).begin());
  }
  return out;
}

CMatrix gramian(const CrystalModel& model, std::span<const FourierCoeffs> hats, std::size_t omega) {
  const CMatrix j = pre_gramian(model, hats, omega);
  return j.adjoint() * j;
}

CMatrix gramian(const CrystalModel& model, std::span<const Signal> family, std::size_t omega) {
  const CMatrix j = pre_gramian(model, family, omega);
  return j.adjoint() * j;
}

std::vector<CMatrix> pre_gramian_field(const CrystalModel& model, std::span<const FourierCoeffs> hats, Exec exec) {
  if (hats.empty()) throw Error(ErrorKind::EmptyFamily, "pre-Gramian of an empty family");
  std::vector<CMatrix> out(model.section_size());
  const auto count = static_cast<std::ptrdiff_t>(model.section_size());
#pragma omp parallel for schedule(dynamic) num_threads(exec.jobs) if (exec.jobs > 1)
  for (std::ptrdiff_t omega = 0; omega < count; ++omega)
    out[static_cast<std::size_t>(omega)] = pre_gramian(model, hats, static_cast<std::size_t>(omega));
  return out;
}

}  // namespace crystinv

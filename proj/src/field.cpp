#include "fslab/field.hpp"

#include <cmath>
#include <stdexcept>

#include "fslab/fft.hpp"
#include "fslab/kernels.hpp"

namespace fslab {

Field::Field(GridSpec g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
  grid.validate();
  if (values.size() != grid.total())
    throw std::invalid_argument("Field: values size does not match grid");
}

Field Field::zeros(const GridSpec& g) {
  return Field(g, std::vector<cplx>(g.total(), cplx{0.0, 0.0}));
}

Field Field::constant(const GridSpec& g, cplx c) {
  return Field(g, std::vector<cplx>(g.total(), c));
}

Field Field::from_fn(const GridSpec& g,
                     const std::function<cplx(const std::array<double, 3>&)>& fn, Exec ex) {
  g.validate();
  std::vector<cplx> v(g.total());
  kernels::for_blocks(g.total(), ex, [&](std::size_t i0, std::size_t i1) {
    for (std::size_t i = i0; i < i1; ++i) {
      const auto idx = g.unflatten(i);
      std::array<double, 3> x{0.0, 0.0, 0.0};
      for (int d = 0; d < g.dim; ++d) x[d] = g.coord(idx[d]);
      v[i] = fn(x);
    }
  });
  return Field(g, std::move(v));
}

Field Field::from_modes(const GridSpec& g, const std::vector<cplx>& modes, Exec ex) {
  Field f(g, fft::backward(g, modes, ex));
  f.fourier_cached_ = modes;
  return f;
}

const std::vector<cplx>& Field::modes(Exec ex) const {
  if (!fourier_cached_) fourier_cached_ = fft::forward(grid, values, ex);
  return *fourier_cached_;
}

void Field::check_valid() const {
  grid.validate();
  if (values.size() != grid.total())
    throw std::invalid_argument("Field: values size does not match grid");
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("Field: non-finite sample");
}

} // namespace fslab

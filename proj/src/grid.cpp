#include "qgroup/grid.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <stdexcept>

namespace qgroup {

namespace {

bool power_of_two(int n) { return n >= 4 && (n & (n - 1)) == 0; }

}  // namespace

GridFunction::GridFunction(std::vector<GridAxis> axes) : axes_(std::move(axes)) {
  std::size_t total = 1;
  strides_.assign(axes_.size(), 1);
  for (int k = dims() - 1; k >= 0; --k) {
    if (axes_[k].points < 1 || axes_[k].half_width <= 0) throw std::invalid_argument("grid axis needs points and width");
    strides_[k] = total;
    total *= static_cast<std::size_t>(axes_[k].points);
  }
  values_.assign(total, 0);
}

GridFunction GridFunction::sample(std::vector<GridAxis> axes,
                                  const std::function<std::complex<double>(const Eigen::VectorXd&)>& f) {
  GridFunction g(std::move(axes));
  for (std::size_t i = 0; i < g.size(); ++i) g.values_[i] = f(g.point(i));
  return g;
}

Eigen::VectorXd GridFunction::point(std::size_t linear) const {
  Eigen::VectorXd p(dims());
  for (int k = 0; k < dims(); ++k) {
    const int j = static_cast<int>((linear / strides_[k]) % static_cast<std::size_t>(axes_[k].points));
    p(k) = axes_[k].node(j);
  }
  return p;
}

double GridFunction::cell_volume() const {
  double v = 1;
  for (const auto& a : axes_) v *= a.spacing();
  return v;
}

GridFunction GridFunction::fourier(int sign) const {
  std::vector<GridAxis> out_axes;
  for (const auto& a : axes_) {
    if (!power_of_two(a.points)) throw std::invalid_argument("grid Fourier transform needs power-of-two point counts >= 4");
    out_axes.push_back({0.0, 1.0 / (2 * a.spacing()), a.points});
  }
  GridFunction out(out_axes);
  out.values_ = values_;

  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  // With u_j = c + (j - N/2) du and v_k = (k - N/2) dv, dv = 1 / (N du):
  // sum_j f_j e[s u_j v_k] du = du e[s c v_k] (-1)^k sum_j (-1)^j f_j e[s jk/N]  (N divisible by 4)
  for (int k = 0; k < dims(); ++k) {
    const int N = axes_[k].points;
    const std::size_t stride = strides_[k];
    const std::size_t block = stride * static_cast<std::size_t>(N);
    std::vector<std::complex<double>> line(N), res(N), corr(N);
    for (int m = 0; m < N; ++m) {
      const double v = out_axes[k].node(m);
      const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
      corr[m] = axes_[k].spacing() * sgn * std::polar(1.0, 2 * M_PI * sign * axes_[k].center * v);
    }
    for (std::size_t base = 0; base < out.values_.size(); base += block) {
      for (std::size_t off = 0; off < stride; ++off) {
        for (int j = 0; j < N; ++j) line[j] = out.values_[base + off + j * stride] * ((j % 2 == 0) ? 1.0 : -1.0);
        if (sign > 0) fft.inv(res, line);
        else fft.fwd(res, line);
        for (int m = 0; m < N; ++m) out.values_[base + off + m * stride] = res[m] * corr[m];
      }
    }
  }
  return out;
}

double GridFunction::l1_norm() const {
  double s = 0;
  for (const auto& v : values_) s += std::abs(v);
  return s * cell_volume();
}

double GridFunction::max_abs() const {
  double m = 0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace qgroup

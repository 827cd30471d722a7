#pragma once

#include <algorithm>
#include <cmath>

namespace xrorch {

/// Component-wise resource bundle. The same shape is reused for capacities,
/// demands and per-unit-hour price vectors.
struct ResourceVector {
  double vcpu = 0.0;    // virtual CPU cores
  double ram_gb = 0.0;  // gigabytes
  double gpu = 0.0;     // accelerator units

  ResourceVector& operator+=(const ResourceVector& o) {
    vcpu += o.vcpu;
    ram_gb += o.ram_gb;
    gpu += o.gpu;
    return *this;
  }

  friend ResourceVector operator+(ResourceVector a, const ResourceVector& b) {
    a += b;
    return a;
  }

  ResourceVector scaled(double factor) const {
    return {vcpu * factor, ram_gb * factor, gpu * factor};
  }

  /// true iff every component of *this is <= the matching component of o.
  bool fits_within(const ResourceVector& o) const {
    return vcpu <= o.vcpu && ram_gb <= o.ram_gb && gpu <= o.gpu;
  }

  /// true iff some component of *this exceeds the matching component of o.
  bool exceeds(const ResourceVector& o) const { return !fits_within(o); }

  bool nonnegative() const { return vcpu >= 0 && ram_gb >= 0 && gpu >= 0; }

  bool finite() const {
    return std::isfinite(vcpu) && std::isfinite(ram_gb) && std::isfinite(gpu);
  }

  friend ResourceVector component_max(const ResourceVector& a, const ResourceVector& b) {
    return {std::max(a.vcpu, b.vcpu), std::max(a.ram_gb, b.ram_gb), std::max(a.gpu, b.gpu)};
  }

  friend ResourceVector component_min(const ResourceVector& a, const ResourceVector& b) {
    return {std::min(a.vcpu, b.vcpu), std::min(a.ram_gb, b.ram_gb), std::min(a.gpu, b.gpu)};
  }

  /// Inner product, e.g. dot(price, usage) = currency per hour.
  friend double dot(const ResourceVector& a, const ResourceVector& b) {
    return a.vcpu * b.vcpu + a.ram_gb * b.ram_gb + a.gpu * b.gpu;
  }

  bool operator==(const ResourceVector&) const = default;
};

}  // namespace xrorch

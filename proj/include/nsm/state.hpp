#pragma once

#include <array>
#include <cstddef>
#include <utility>

#include "nsm/spectral_field.hpp"

namespace nsm {

/// A time instant plus a fixed set of vector fields on one grid. The
/// integrator works on this layout; the named states below give the slots
/// their physical meaning.
template <std::size_t K>
struct FieldTuple {
  static constexpr std::size_t size = K;

  double t = 0.0;
  std::array<SpectralField, K> fields;

  const Grid& grid() const { return fields[0].grid(); }
};

namespace detail {
template <std::size_t... I>
std::array<SpectralField, sizeof...(I)> zeros(const Grid& g, std::index_sequence<I...>) {
  return {((void)I, SpectralField::vector(g))...};
}
}  // namespace detail

template <class S>
S zero_state(const Grid& g) {
  return S{{0.0, detail::zeros(g, std::make_index_sequence<S::size>{})}};
}

/// (v_-, v_+, E, B).
struct NsmState : FieldTuple<4> {
  SpectralField& v_minus() { return fields[0]; }
  SpectralField& v_plus() { return fields[1]; }
  SpectralField& E() { return fields[2]; }
  SpectralField& B() { return fields[3]; }
  const SpectralField& v_minus() const { return fields[0]; }
  const SpectralField& v_plus() const { return fields[1]; }
  const SpectralField& E() const { return fields[2]; }
  const SpectralField& B() const { return fields[3]; }

  static NsmState zero(const Grid& g) { return zero_state<NsmState>(g); }
};

/// Bulk velocity u = (v_- + v_+)/2, current j = (v_+ - v_-)/2, E, B.
struct BulkState : FieldTuple<4> {
  SpectralField& u() { return fields[0]; }
  SpectralField& j() { return fields[1]; }
  SpectralField& E() { return fields[2]; }
  SpectralField& B() { return fields[3]; }
  const SpectralField& u() const { return fields[0]; }
  const SpectralField& j() const { return fields[1]; }
  const SpectralField& E() const { return fields[2]; }
  const SpectralField& B() const { return fields[3]; }

  static BulkState zero(const Grid& g) { return zero_state<BulkState>(g); }
};

/// Electromagnetic field only.
struct MaxwellState : FieldTuple<2> {
  SpectralField& E() { return fields[0]; }
  SpectralField& B() { return fields[1]; }
  const SpectralField& E() const { return fields[0]; }
  const SpectralField& B() const { return fields[1]; }

  static MaxwellState zero(const Grid& g) { return zero_state<MaxwellState>(g); }
};

}  // namespace nsm

// Copyright 2026 The hms Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hms {

// All counts, coefficients and objective values are arbitrary precision.
// Nothing in a decision path is ever rounded.
using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;

class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

inline bool fits_long(const Int& v) { return v.fits_slong_p(); }

inline long to_long(const Int& v) {
  if (!v.fits_slong_p()) throw ResourceError("integer does not fit a machine word: " + v.get_str());
  return v.get_si();
}

// Clamp to [-cap, cap]; used for enumeration radii where an over-large
// value only means "effectively unbounded".
inline long to_long_clamped(const Int& v, long cap) {
  if (v > cap) return cap;
  if (v < -cap) return -cap;
  return v.get_si();
}

inline Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Serialized form is always "p/q" in lowest terms, including "4/1".
inline std::string rat_to_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat parse_rat(const std::string& s);
Int parse_int(const std::string& s);

}  // namespace hms

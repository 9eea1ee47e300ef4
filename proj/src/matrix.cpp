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

#include "hms/matrix.hpp"

#include <stdexcept>

namespace hms {

IntMatrix::IntMatrix(long rows, long cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  entries_.assign(static_cast<size_t>(rows) * cols, Int(0));
}

IntMatrix::IntMatrix(long rows, long cols, IntVec entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  if (entries_.size() != static_cast<size_t>(rows) * cols)
    throw std::invalid_argument("matrix entry count does not match rows*cols");
}

Int IntMatrix::max_abs() const {
  Int best = 0;
  for (const Int& e : entries_) {
    Int a = abs(e);
    if (a > best) best = a;
  }
  return best;
}

Int IntMatrix::row_dot(long r, std::span<const Int> x) const {
  if (x.size() != static_cast<size_t>(cols_))
    throw std::invalid_argument("row_dot dimension mismatch");
  Int acc = 0;
  auto rr = row(r);
  for (long c = 0; c < cols_; ++c) acc += rr[c] * x[c];
  return acc;
}

}  // namespace hms

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

#include <cstddef>
#include <span>
#include <vector>

#include "hms/numbers.hpp"

namespace hms {

// Dense integer matrix, row major. Small by construction: these hold the
// bimatrix blocks A1/A2, never the expanded n-fold matrix (except in
// oracle code).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(long rows, long cols);
  IntMatrix(long rows, long cols, IntVec entries);

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  Int& at(long r, long c) { return entries_[static_cast<size_t>(r) * cols_ + c]; }
  const Int& at(long r, long c) const { return entries_[static_cast<size_t>(r) * cols_ + c]; }

  std::span<const Int> row(long r) const {
    return {entries_.data() + static_cast<size_t>(r) * cols_, static_cast<size_t>(cols_)};
  }

  const IntVec& entries() const { return entries_; }

  // The paper's `a`: largest absolute entry.
  Int max_abs() const;

  // row(r) . x
  Int row_dot(long r, std::span<const Int> x) const;

  bool operator==(const IntMatrix& o) const = default;

 private:
  long rows_ = 0;
  long cols_ = 0;
  IntVec entries_;
};

}  // namespace hms

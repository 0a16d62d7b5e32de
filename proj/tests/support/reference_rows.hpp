// tests/support/reference_rows.hpp

// Copyright 2026   The wordseg Authors

// See the LICENSE file for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Reference score rows: precision and recall (percent, one decimal) with the
// over-segmentation and R-value reported alongside them.
struct ReferenceRow {
  const char* name;
  double precision, recall, os, r_value;
};

inline constexpr ReferenceRow kReferenceRows[] = {
    {"row01", 30.7, 18.0, -41.2, 39.7},
    {"row02", 31.7, 13.8, -56.6, 37.9},
    {"row03", 15.5, 81.0, 421.4, -266.6},
    {"row04", 15.8, 68.1, 330.9, -194.5},
    {"row05", 18.2, 54.1, 196.4, -86.5},
    {"row06", 16.4, 56.8, 245.2, -126.5},
    {"row07", 35.0, 29.6, -15.4, 44.5},
    {"row08", 30.9, 32.0, 3.46, 40.7},
    {"row09", 44.5, 43.6, -2.0, 52.6},
    {"row10", 40.8, 45.1, 10.38, 49.0},
    {"row11", 43.8, 43.8, 0.0, 51.9},
};

// Copyright 2026 The Spectral Authors.
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

/*!
  \file cli.hpp
  \brief Command-line front end: verify, abstract, spectrum, extract, gen,
  cross-check.

  Exit codes: 0 verified/ok, 1 refuted, 2 inconclusive, 64 usage error,
  74 I/O error.
*/

#pragma once

#include <iosfwd>

namespace spectral {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spectral

// Copyright 2026 The qcollapse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcollapse/config.hpp"

namespace qcollapse {

bool Config::set(std::string_view name, double value) {
  if (!(value > 0.0)) return false;
  struct Slot {
    std::string_view name;
    double Config::*field;
  };
  static constexpr Slot kSlots[] = {
      {"norm", &Config::norm},       {"orth", &Config::orth},
      {"herm", &Config::herm},       {"eig", &Config::eig},
      {"recon", &Config::recon},     {"cluster", &Config::cluster},
      {"inv", &Config::inv},         {"zero", &Config::zero},
      {"corr", &Config::corr},       {"assert", &Config::assert_prob},
  };
  for (const auto& slot : kSlots) {
    if (slot.name == name) {
      this->*slot.field = value;
      return true;
    }
  }
  return false;
}

}  // namespace qcollapse

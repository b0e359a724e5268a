// Copyright 2026 The ringpir Authors
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

#ifndef RINGPIR_LOG_H_
#define RINGPIR_LOG_H_

namespace ringpir {

// Sets the spdlog level from RINGPIR_LOG (error | info | debug; default
// error).
void init_logging_from_env();

}  // namespace ringpir

#endif  // RINGPIR_LOG_H_

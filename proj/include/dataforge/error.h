// dataforge/error.h

// Copyright 2026  The DataForge Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABILITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>

namespace dataforge {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define DATAFORGE_DEFINE_ERROR(NAME) \
  class NAME : public Error {        \
   public:                           \
    using Error::Error;              \
  }

DATAFORGE_DEFINE_ERROR(EmptyAudio);
DATAFORGE_DEFINE_ERROR(CorruptAudio);
DATAFORGE_DEFINE_ERROR(SampleRateMismatch);
DATAFORGE_DEFINE_ERROR(SpeakerMismatch);
DATAFORGE_DEFINE_ERROR(UndefinedRate);
DATAFORGE_DEFINE_ERROR(UnsupportedLanguage);
DATAFORGE_DEFINE_ERROR(BackendError);
DATAFORGE_DEFINE_ERROR(EmptyAlignment);
DATAFORGE_DEFINE_ERROR(AlignmentMismatch);
DATAFORGE_DEFINE_ERROR(InvalidDuration);
DATAFORGE_DEFINE_ERROR(EmptyText);
DATAFORGE_DEFINE_ERROR(ParseError);
DATAFORGE_DEFINE_ERROR(InvalidStep);
DATAFORGE_DEFINE_ERROR(SamplerError);
DATAFORGE_DEFINE_ERROR(NumericalError);
DATAFORGE_DEFINE_ERROR(UnknownWorker);
DATAFORGE_DEFINE_ERROR(UnknownJob);
DATAFORGE_DEFINE_ERROR(ProtocolError);
DATAFORGE_DEFINE_ERROR(ConfigError);

#undef DATAFORGE_DEFINE_ERROR

}  // namespace dataforge

#pragma once

#include "regforge/error.hpp"

namespace regforge::cli {

/// File could not be read or written.
class IoError : public Error {
   public:
    using Error::Error;
};

}  // namespace regforge::cli

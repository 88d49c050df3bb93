#pragma once

#include <stdexcept>
#include <string>

namespace sga {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands belong to algebras of different dimension, or a blade does not fit its algebra.
class dimension_mismatch : public error {
 public:
  using error::error;
};

/// An integer does not fit the subspace it is being coded into.
class encoding_range_error : public error {
 public:
  using error::error;
};

/// A write-once memory place was written while already holding a 1.
class target_occupied : public error {
 public:
  using error::error;
};

/// Two distinct source blades were merged by a relabelling that discards non-redundant bits.
class collision_error : public error {
 public:
  using error::error;
};

/// A construction would exceed a configured size cap.
class resource_error : public error {
 public:
  using error::error;
};

/// A code is not a member of the enumerated set it is required to belong to.
class out_of_set_error : public error {
 public:
  using error::error;
};

/// Malformed structural input (netlist, machine description, serialized multivector).
class parse_error : public error {
 public:
  using error::error;
};

/// A netlist violates write-once or topological ordering.
class validation_error : public error {
 public:
  using error::error;
};

}  // namespace sga

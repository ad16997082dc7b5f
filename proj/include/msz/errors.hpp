#pragma once

#include <stdexcept>
#include <string>

namespace msz {

/// A caller broke an operation's precondition (invalid code triple, index out
/// of range, decoding with a triple that does not contain the peeked index).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed serialized data: truncated state, bad magic, checksum mismatch.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A symbol is not representable by the codec or not present in a tree.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A size limit was exceeded (payload longer than max_len, alphabet larger
/// than the precision, multiset larger than the coder's precision bound).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON input that is not an array of flat objects.
class IngestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace msz

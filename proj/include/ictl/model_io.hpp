// JSON model documents.
//
//   {"worlds": ["w1", ...],
//    "preorder": [["w1", "v1"], ...],      generator edges, optional
//    "transitions": [["w1", "w2"], ...],
//    "valuation": {"w1": ["p"], ...}}      optional, missing worlds map to {}

#ifndef ICTL_MODEL_IO_HPP
#define ICTL_MODEL_IO_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "ictl/model.hpp"

namespace ictl {

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RawModel parse_model_document(std::string_view text);

/// Reads and parses a file. Throws ModelFormatError for I/O failures too.
RawModel load_model(const std::string& path);

/// Serializes with the preorder written as every non-reflexive related pair,
/// so loading the output reproduces the same closed relation.
std::string model_to_json(const BirelationalModel& m, int indent = -1);

}  // namespace ictl

#endif  // ICTL_MODEL_IO_HPP

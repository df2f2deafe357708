#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace finsleroid {

enum class ErrorKind {
  OutOfRange,
  DegenerateVector,
  AxisSingular,
  EquatorSingular,
  BadDirection,
  VertexSingular,
  ChartOutOfRange,
  BadFrame,
  AntipodalSingular,
  NotUnitSpeed,
  CollinearVectors,
  NoConvergence,
  NegativeRadicand,
  SingularXi,
  DegenerateW,
  NotAcute,
  BadInput,
};

std::string_view kind_name(ErrorKind k);

// geometric singularities map to CLI exit code 3, the rest to 2
bool is_geometric(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace finsleroid

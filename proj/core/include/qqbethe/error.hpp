#pragma once

#include <stdexcept>
#include <string>

namespace qqb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// No polynomial q-minus exists for this color.
class InconsistentSystem : public Error {
 public:
  InconsistentSystem(int color, const std::string& what)
      : Error(what), color_(color) {}
  int color() const { return color_; }

 private:
  int color_;
};

class PoleCollision : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class SingularJacobian : public Error {
 public:
  using Error::Error;
};

class PathCollision : public Error {
 public:
  using Error::Error;
};

class BadPartition : public Error {
 public:
  using Error::Error;
};

class UnsupportedType : public Error {
 public:
  using Error::Error;
};

class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

class FactorizationFailed : public Error {
 public:
  using Error::Error;
};

class ChainBroken : public Error {
 public:
  ChainBroken(int step, const std::string& what) : Error(what), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

}  // namespace qqb

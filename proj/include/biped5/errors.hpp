#pragma once

#include <stdexcept>
#include <string>

#include "biped5/types.hpp"

namespace biped5 {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Config text could not be parsed. line is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(int line, std::string field, const std::string& what)
      : Error("line " + std::to_string(line) + (field.empty() ? "" : " (" + field + ")") +
              ": " + what),
        line_(line),
        field_(std::move(field)) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

// A value violates a documented invariant; field names the offender.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Argument outside the domain of a function (e.g. t outside [t0, tf]).
class DomainError : public Error {
 public:
  using Error::Error;
};

// M1*H1 >= 0: the reduced gait equation has no real exponential roots.
class StabilityConditionViolated : public Error {
 public:
  StabilityConditionViolated(double m1, double h1)
      : Error("stability condition M1*H1 < 0 violated (M1=" + std::to_string(m1) +
              ", H1=" + std::to_string(h1) + ")"),
        m1_(m1),
        h1_(h1) {}
  double m1() const { return m1_; }
  double h1() const { return h1_; }

 private:
  double m1_;
  double h1_;
};

// The gait period excites the homogeneous solution: H1 == M1*(2*pi/T)^2.
class ResonantPeriod : public Error {
 public:
  using Error::Error;
};

// Inertia factorization failed; carries the configuration.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, const Vec5& theta) : Error(what), theta_(theta) {}
  const Vec5& theta() const { return theta_; }

 private:
  Vec5 theta_;
};

class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double t)
      : Error(what + " at t=" + std::to_string(t)), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

}  // namespace biped5

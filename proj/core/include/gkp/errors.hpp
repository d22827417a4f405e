// Copyright 2026 The gkp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gkp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class SingularPointError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Carries the sub-interval with the largest error estimate at the point where
// the adaptive scheme gave up.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double a, double b, double err)
      : Error(what), a_(a), b_(b), err_(err) {}
  double interval_lo() const { return a_; }
  double interval_hi() const { return b_; }
  double error_estimate() const { return err_; }

 private:
  double a_, b_, err_;
};

struct IterationRecord {
  double update;     // ||v_{k+1} - v_k|| / ||v_k||
  double stabilizer; // S_k
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<IterationRecord> history)
      : Error(what), history_(std::move(history)) {}
  const std::vector<IterationRecord>& history() const { return history_; }

 private:
  std::vector<IterationRecord> history_;
};

}  // namespace gkp

#pragma once

#include <stdexcept>
#include <string>

namespace regpoly {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two input points lie within the point-coincidence radius of each other.
/// Line numbers are filled in when the points came from a file (0 otherwise).
class DuplicatePoints : public Error {
 public:
  DuplicatePoints(int id_a, int id_b, int line_a = 0, int line_b = 0)
      : Error(make_message(id_a, id_b, line_a, line_b)),
        id_a_(id_a), id_b_(id_b), line_a_(line_a), line_b_(line_b) {}

  int id_a() const noexcept { return id_a_; }
  int id_b() const noexcept { return id_b_; }
  int line_a() const noexcept { return line_a_; }
  int line_b() const noexcept { return line_b_; }

 private:
  static std::string make_message(int a, int b, int la, int lb) {
    std::string msg = "duplicate points: ids " + std::to_string(a) + " and " + std::to_string(b);
    if (la > 0 && lb > 0) {
      msg += " (lines " + std::to_string(la) + " and " + std::to_string(lb) + ")";
    }
    return msg;
  }

  int id_a_, id_b_, line_a_, line_b_;
};

class Collinear : public Error {
 public:
  Collinear() : Error("points are collinear") {}
};

class BadK : public Error {
 public:
  explicit BadK(int k) : Error("polygon size must be >= 3, got " + std::to_string(k)), k_(k) {}
  int k() const noexcept { return k_; }

 private:
  int k_;
};

class BadSkip : public Error {
 public:
  BadSkip(int k, int d)
      : Error("skip " + std::to_string(d) + " out of range for k=" + std::to_string(k)) {}
};

class NoIsosceles : public Error {
 public:
  NoIsosceles() : Error("point set has no isosceles triples") {}
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("parse error at line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class InfeasibleSpec : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace regpoly

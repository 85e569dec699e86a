#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace planrec {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

// Lexical or structural problem in a PDDL input. Carries 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string &message, int line, int column)
      : Error(message + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}

  int line;
  int column;
};

// Input uses a PDDL feature outside the supported subset.
class UnsupportedConstructError : public Error {
 public:
  UnsupportedConstructError(const std::string &construct, int line, int column)
      : Error("unsupported construct: " + construct + " (line " +
              std::to_string(line) + ", column " + std::to_string(column) + ")"),
        construct(construct),
        line(line),
        column(column) {}

  std::string construct;
  int line;
  int column;
};

class GroundingError : public Error {
 public:
  using Error::Error;
};

// Action applied in a state that does not satisfy its precondition.
class InapplicableActionError : public Error {
 public:
  InapplicableActionError(const std::string &action,
                          std::vector<std::string> missing_facts)
      : Error("action " + action + " inapplicable; missing " +
              join(missing_facts)),
        action(action),
        missing(std::move(missing_facts)) {}

  std::string action;
  std::vector<std::string> missing;

 private:
  static std::string join(const std::vector<std::string> &facts) {
    std::string out;
    for (const auto &f : facts) {
      if (!out.empty()) out += " ";
      out += f;
    }
    return out;
  }
};

// Observation names no grounded action of the problem.
class UnknownActionError : public Error {
 public:
  explicit UnknownActionError(const std::string &name)
      : Error("unknown action: " + name), name(name) {}

  std::string name;
};

// Goal not reachable in the delete relaxation; extraction cannot proceed.
class UnsolvableGoalError : public Error {
 public:
  using Error::Error;
};

class ExtractionError : public Error {
 public:
  using Error::Error;
};

class DatasetError : public Error {
 public:
  using Error::Error;
};

}  // namespace planrec

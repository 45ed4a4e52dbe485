#pragma once

#include <stdexcept>
#include <string>

namespace deltahull {

// Every failure the library reports carries a kind; the CLI maps kinds to
// exit codes.
enum class ErrorKind {
  Parse,
  NotPointed,
  DimensionMismatch,
  SingularMatrix,
  SingularBasis,
  SingularUpdate,
  InfeasiblePoint,
  UnboundedLine,
  NotAVertex,
  RankDeficient,
  BudgetExceeded,
  BoundViolated,
  EmptyAlphaInterval,
  DisconnectedGraph,
  Unbounded,
  PreconditionViolated,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class KindedError : public Error {
 public:
  explicit KindedError(const std::string& what) : Error(K, what) {}
};

using ParseError = KindedError<ErrorKind::Parse>;
using NotPointed = KindedError<ErrorKind::NotPointed>;
using DimensionMismatch = KindedError<ErrorKind::DimensionMismatch>;
using SingularMatrix = KindedError<ErrorKind::SingularMatrix>;
using SingularBasis = KindedError<ErrorKind::SingularBasis>;
using SingularUpdate = KindedError<ErrorKind::SingularUpdate>;
using InfeasiblePoint = KindedError<ErrorKind::InfeasiblePoint>;
using UnboundedLine = KindedError<ErrorKind::UnboundedLine>;
using NotAVertex = KindedError<ErrorKind::NotAVertex>;
using RankDeficient = KindedError<ErrorKind::RankDeficient>;
using BudgetExceeded = KindedError<ErrorKind::BudgetExceeded>;
using BoundViolated = KindedError<ErrorKind::BoundViolated>;
using EmptyAlphaInterval = KindedError<ErrorKind::EmptyAlphaInterval>;
using DisconnectedGraph = KindedError<ErrorKind::DisconnectedGraph>;
using Unbounded = KindedError<ErrorKind::Unbounded>;
using PreconditionViolated = KindedError<ErrorKind::PreconditionViolated>;

}  // namespace deltahull

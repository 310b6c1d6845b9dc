#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace colorfix {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed external input: graph files, list files, descriptors, transcripts.
struct ParseError : Error {
  using Error::Error;
};

// An API precondition was violated by the caller (bad vertex id, index out of
// range, list referencing an unknown color, ...).
struct InvalidArgument : Error {
  using Error::Error;
};

// An exact-enumeration budget would be exceeded (product spaces, Omega, ...).
struct BudgetExceeded : Error {
  using Error::Error;
};

// The resampling loop hit its per-call execution cap.  `executions` is the
// number of recoloring steps performed by the aborted top-level call.
struct ExecutionCapExceeded : Error {
  explicit ExecutionCapExceeded(long long t)
      : Error("execution cap exceeded after " + std::to_string(t) +
              " recoloring steps"),
        executions(t) {}
  long long executions;
};

// Completion-phase failures.
struct CompletionError : Error {
  enum class Kind {
    kPreconditionViolated,  // input coloring still has flaws
    kIterationCapExceeded,  // resampling did not converge (bad parameter regime)
    kGreedyStuck,           // greedy found a blank vertex with no admissible color
  };
  CompletionError(Kind k, std::int32_t vertex, const std::string& what)
      : Error(what), kind(k), vertex(vertex) {}
  Kind kind;
  std::int32_t vertex;
};

// A transcript that cannot correspond to any run (tampered or truncated).
struct TranscriptError : Error {
  using Error::Error;
};

}  // namespace colorfix

#pragma once

#include <concepts>
#include <cstddef>
#include <vector>

#include "platoon/error.hpp"
#include "platoon/time.hpp"

namespace platoon {

/// The only channel through which a decision procedure may consult its
/// delay bound d: `at_most(c)` answers "is c <= d?". Implementations must
/// be monotone (true at c implies true at every c' <= c).
template <class P>
concept DelayProbe = requires(P& p, Time c) {
  { p.at_most(c) } -> std::convertible_to<bool>;
};

/// Concrete bound: c <= d.
struct AtMostProbe {
  Time d;
  bool at_most(Time c) const noexcept { return c <= d; }
};

/// Bound d - epsilon for an infinitesimal epsilon: c < d.
struct StrictlyBelowProbe {
  Time d;
  bool at_most(Time c) const noexcept { return c < d; }
};

/// Forwards to another probe and logs every query and answer.
template <DelayProbe Inner>
class RecordingProbe {
public:
  explicit RecordingProbe(Inner& inner) : inner_(inner) {}

  bool at_most(Time c) {
    const bool answer = inner_.at_most(c);
    queries_.push_back(c);
    answers_.push_back(answer);
    return answer;
  }

  const std::vector<Time>& queries() const noexcept { return queries_; }
  const std::vector<bool>& answers() const noexcept { return answers_; }

private:
  Inner& inner_;
  std::vector<Time> queries_;
  std::vector<bool> answers_;
};

/// Answers from a recorded sequence, ignoring the comparison value.
class ReplayProbe {
public:
  explicit ReplayProbe(std::vector<bool> answers) : answers_(std::move(answers)) {}

  bool at_most(Time) {
    if (next_ >= answers_.size()) throw ContractViolation("replay exhausted: decider asked more questions");
    return answers_[next_++];
  }

  bool exhausted() const noexcept { return next_ == answers_.size(); }

private:
  std::vector<bool> answers_;
  std::size_t next_ = 0;
};

template <DelayProbe Inner>
class CountingProbe {
public:
  explicit CountingProbe(Inner& inner) : inner_(inner) {}
  bool at_most(Time c) {
    ++count_;
    return inner_.at_most(c);
  }
  std::size_t count() const noexcept { return count_; }

private:
  Inner& inner_;
  std::size_t count_ = 0;
};

} // namespace platoon

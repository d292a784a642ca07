#pragma once

#include <stdexcept>
#include <string>

namespace typoline {

enum class ErrorKind {
  MalformedLine,
  InvalidVerseId,
  DuplicateVerseId,
  UnknownTag,
  MalformedUnit,
  MissingVerse,
  EmptyCorpus,
  EmptyTrainingSet,
  NonMonotonicWordIndex,
  EmptyVerse,
  SingleClass,
  EmptyTraining,
  NoComparableVerses,
  TooFewGroups,
  Io,
  Usage,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace typoline

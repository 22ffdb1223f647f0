// Copyright 2026 The teasekit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace teasekit {

// Base class for every error raised by the library. Each subclass names one
// failure condition so callers can catch exactly what they handle.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// perc_match / ROUGE reference with no unigrams (or no n-grams).
class EmptyReference : public Error {
 public:
  explicit EmptyReference(const std::string& what = "reference text has no terms")
      : Error(what) {}
};

class EmptyDomain : public Error {
 public:
  explicit EmptyDomain(std::size_t domain)
      : Error("domain " + std::to_string(domain) + " has no terms"), domain_(domain) {}
  std::size_t domain() const noexcept { return domain_; }

 private:
  std::size_t domain_;
};

class UnknownTerm : public Error {
 public:
  explicit UnknownTerm(const std::string& term)
      : Error("term '" + term + "' occurs in no domain"), term_(term) {}
  const std::string& term() const noexcept { return term_; }

 private:
  std::string term_;
};

class InvalidK : public Error {
 public:
  using Error::Error;
};

class ProviderFailure : public Error {
 public:
  using Error::Error;
};

class EmptyCorpus : public Error {
 public:
  explicit EmptyCorpus(const std::string& what = "no record qualifies") : Error(what) {}
};

class EmptyArticle : public Error {
 public:
  explicit EmptyArticle(const std::string& what = "article has no sentences") : Error(what) {}
};

class InsufficientRecords : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// File-level I/O failure (unreadable input, unwritable output).
class InputError : public Error {
 public:
  using Error::Error;
};

// A pipeline stage failed; carries the stage name.
class StageFailure : public Error {
 public:
  StageFailure(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace teasekit

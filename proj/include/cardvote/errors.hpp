#pragma once

#include <stdexcept>
#include <string>

namespace cardvote {

// Base of every error the library raises. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NormalizationError : public Error { public: using Error::Error; };
class IndexError : public Error { public: using Error::Error; };
class PreconditionError : public Error { public: using Error::Error; };
class UndefinedRatioError : public Error { public: using Error::Error; };
class WeightError : public Error { public: using Error::Error; };
class BudgetError : public Error { public: using Error::Error; };
class GridError : public Error { public: using Error::Error; };
class DegenerateProjectionError : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };
class DataError : public Error { public: using Error::Error; };

}  // namespace cardvote

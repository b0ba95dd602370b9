// Copyright 2026 The bicrypt Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace bicrypt {

enum class ErrorCategory {
    Parameter,
    Capacity,
    Usage,
    DepthBudget,
    Shape,
    Index,
    Ingestion,
};

const char* to_string(ErrorCategory category);

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& what) : Error(ErrorCategory::Parameter, what) {}
};

/// Slot capacity exceeded; carries the required and available slot counts.
class CapacityError : public Error {
public:
    CapacityError(const std::string& what, long long required, long long available)
        : Error(ErrorCategory::Capacity,
                what + " (required " + std::to_string(required) + " slots, available " +
                    std::to_string(available) + ")"),
          required_(required),
          available_(available) {}

    long long required() const noexcept { return required_; }
    long long available() const noexcept { return available_; }

private:
    long long required_;
    long long available_;
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error(ErrorCategory::Usage, what) {}
};

/// A multiplication was requested on a ciphertext with no level left.
class DepthBudgetError : public Error {
public:
    DepthBudgetError(const std::string& layer, int level)
        : Error(ErrorCategory::DepthBudget,
                "multiplicative depth exhausted at layer '" + (layer.empty() ? std::string("<none>") : layer) +
                    "' (operand level " + std::to_string(level) + ")"),
          layer_(layer) {}

    const std::string& layer() const noexcept { return layer_; }

private:
    std::string layer_;
};

class ShapeError : public Error {
public:
    explicit ShapeError(const std::string& what) : Error(ErrorCategory::Shape, what) {}
};

class IndexError : public Error {
public:
    explicit IndexError(const std::string& what) : Error(ErrorCategory::Index, what) {}
};

class IngestionError : public Error {
public:
    explicit IngestionError(const std::string& what) : Error(ErrorCategory::Ingestion, what) {}
};

}  // namespace bicrypt

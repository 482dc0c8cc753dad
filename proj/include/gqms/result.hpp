#pragma once

#include <type_traits>
#include <utility>
#include <variant>

namespace gqms {

/// Explicit error marker, needed when T and E are the same type.
template <typename E>
struct Failure {
  E error;
};

template <typename E>
Failure<std::decay_t<E>> fail(E&& error)
{
  return {std::forward<E>(error)};
}

/// Either a value or an error payload. Operations that collect several
/// findings use a vector as `E`.
template <typename T, typename E>
class Result {
 public:
  Result(T value) : data_(std::in_place_index<0>, std::move(value)) {}
  Result(E error)
    requires(!std::is_same_v<T, E>)
    : data_(std::in_place_index<1>, std::move(error))
  {
  }
  Result(Failure<E> f) : data_(std::in_place_index<1>, std::move(f.error)) {}

  [[nodiscard]] bool ok() const noexcept { return data_.index() == 0; }
  explicit operator bool() const noexcept { return ok(); }

  T& value() & { return std::get<0>(data_); }
  const T& value() const& { return std::get<0>(data_); }
  T&& value() && { return std::get<0>(std::move(data_)); }

  E& error() & { return std::get<1>(data_); }
  const E& error() const& { return std::get<1>(data_); }
  E&& error() && { return std::get<1>(std::move(data_)); }

  T& operator*() & { return value(); }
  const T& operator*() const& { return value(); }

  T* operator->() { return &value(); }
  const T* operator->() const { return &value(); }

 private:
  std::variant<T, E> data_;
};

}  // namespace gqms

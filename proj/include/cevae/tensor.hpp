#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cevae/errors.hpp"

namespace cevae {

using Shape = std::vector<std::int64_t>;

std::int64_t shape_numel(const Shape& shape);
std::string shape_str(const Shape& shape);

template <typename T>
class Tape;

namespace detail {

template <typename T>
struct Node {
    Shape shape;
    std::vector<T> data;
    std::vector<T> grad;  // allocated lazily, zero-filled
    bool requires_grad = false;
    const void* tape = nullptr;  // tape that produced this node; null for leaves

    void ensure_grad() {
        if (grad.size() != data.size()) grad.assign(data.size(), T(0));
    }
};

}  // namespace detail

/// Dense row-major n-d array, shared by handle.
///
/// Tensors produced by ops are immutable values; mutable_data() exists for
/// parameter updates between tapes (the optimizer) and for constructing leaves.
template <typename T>
class Tensor {
public:
    using Scalar = T;

    Tensor() = default;

    static Tensor zeros(Shape shape) {
        Tensor t;
        t.node_ = std::make_shared<detail::Node<T>>();
        t.node_->data.assign(static_cast<std::size_t>(shape_numel(shape)), T(0));
        t.node_->shape = std::move(shape);
        return t;
    }

    static Tensor full(Shape shape, T value) {
        Tensor t = zeros(std::move(shape));
        for (auto& v : t.node_->data) v = value;
        return t;
    }

    static Tensor from(Shape shape, std::vector<T> data) {
        if (static_cast<std::int64_t>(data.size()) != shape_numel(shape)) {
            throw ShapeError("tensor data has " + std::to_string(data.size()) +
                             " elements, shape " + shape_str(shape) + " needs " +
                             std::to_string(shape_numel(shape)));
        }
        Tensor t;
        t.node_ = std::make_shared<detail::Node<T>>();
        t.node_->shape = std::move(shape);
        t.node_->data = std::move(data);
        return t;
    }

    static Tensor scalar(T value) { return from({}, {value}); }

    bool defined() const { return node_ != nullptr; }
    const Shape& shape() const { return node_->shape; }
    std::int64_t numel() const { return static_cast<std::int64_t>(node_->data.size()); }
    std::int64_t dim(std::size_t i) const { return node_->shape[i]; }
    std::int64_t rank() const { return static_cast<std::int64_t>(node_->shape.size()); }

    std::span<const T> data() const { return {node_->data.data(), node_->data.size()}; }
    std::span<T> mutable_data() { return {node_->data.data(), node_->data.size()}; }

    /// Value of a one-element tensor.
    T item() const {
        if (numel() != 1) {
            throw ShapeError("item() on tensor of shape " + shape_str(shape()));
        }
        return node_->data[0];
    }

    bool requires_grad() const { return node_->requires_grad; }
    Tensor& set_requires_grad(bool b) {
        node_->requires_grad = b;
        return *this;
    }

    /// Gradient populated by Tape::backward. Tensors never touched by the
    /// seeded loss read as all zeros.
    std::span<const T> grad() const {
        node_->ensure_grad();
        return {node_->grad.data(), node_->grad.size()};
    }

    void zero_grad() {
        node_->grad.assign(node_->data.size(), T(0));
    }

    /// Deep copy; the clone starts as a fresh leaf.
    Tensor clone() const {
        Tensor t = from(node_->shape, node_->data);
        t.node_->requires_grad = node_->requires_grad;
        return t;
    }

    detail::Node<T>* node() const { return node_.get(); }
    const std::shared_ptr<detail::Node<T>>& node_ptr() const { return node_; }

private:
    std::shared_ptr<detail::Node<T>> node_;
};

/// Record of one forward pass (define-by-run).
///
/// Ops executed against a recording tape append their adjoint rules in
/// execution order; backward replays them reversed, which is a valid reverse
/// topological order by construction. A tape serves exactly one backward call.
/// A tape and everything recorded on it belong to a single thread.
template <typename T>
class Tape {
public:
    Tape() = default;

    /// Forward-only tape: ops run but record no adjoints.
    static Tape inference() {
        Tape t;
        t.recording_ = false;
        return t;
    }

    bool recording() const { return recording_; }
    bool consumed() const { return consumed_; }
    std::size_t size() const { return steps_.size(); }

    void record(std::function<void()> adjoint, const Tensor<T>& out) {
        out.node()->tape = this;
        steps_.push_back(std::move(adjoint));
    }

    /// Seeds d(loss)/d(loss) = 1 and accumulates adjoints into the grad of
    /// every requires_grad tensor reachable from `loss`. Consumes the tape.
    void backward(const Tensor<T>& loss) {
        if (consumed_) throw std::logic_error("backward: tape already consumed");
        if (!recording_) throw std::logic_error("backward: inference tape records no adjoints");
        if (loss.numel() != 1) {
            throw ShapeError("backward: seed must be scalar, got shape " +
                             shape_str(loss.shape()));
        }
        if (loss.node()->tape != this) {
            throw std::logic_error("backward: loss was not produced on this tape");
        }
        consumed_ = true;
        loss.node()->ensure_grad();
        loss.node()->grad[0] = T(1);
        for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) (*it)();
    }

private:
    std::vector<std::function<void()>> steps_;
    bool recording_ = true;
    bool consumed_ = false;
};

using Tensorf = Tensor<float>;
using Tensord = Tensor<double>;

}  // namespace cevae

#pragma once

#include <map>
#include <utility>

#include "hhtwist/scalar.hpp"

namespace hht {

/// Finite linear combination of keys with nonzero scalar coefficients.
template <class Key>
class LinComb {
public:
    using Map = std::map<Key, Scalar>;
    using const_iterator = typename Map::const_iterator;

    LinComb() = default;
    LinComb(const Key& k, const Scalar& c) { add(k, c); }

    void add(const Key& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }

    void add(const LinComb& other, const Scalar& c) {
        if (c.is_zero()) return;
        for (auto& [k, v] : other.terms_) add(k, v * c);
    }

    LinComb& operator+=(const LinComb& other) {
        for (auto& [k, v] : other.terms_) add(k, v);
        return *this;
    }
    LinComb& operator-=(const LinComb& other) {
        for (auto& [k, v] : other.terms_) add(k, -v);
        return *this;
    }
    LinComb operator+(const LinComb& o) const { return LinComb(*this) += o; }
    LinComb operator-(const LinComb& o) const { return LinComb(*this) -= o; }

    LinComb scaled(const Scalar& c) const {
        LinComb out;
        if (c.is_zero()) return out;
        for (auto& [k, v] : terms_) out.terms_.emplace(k, v * c);
        return out;
    }

    bool operator==(const LinComb& o) const { return terms_ == o.terms_; }

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const_iterator begin() const { return terms_.begin(); }
    const_iterator end() const { return terms_.end(); }
    const Map& terms() const { return terms_; }

    /// Coefficient of k, or nothing when absent.
    const Scalar* find(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? nullptr : &it->second;
    }

private:
    Map terms_;
};

}  // namespace hht

#pragma once

/**
 * @file group.hpp
 * @brief Finite abelian groups with canonical integer element ids.
 *
 * Three kinds are supported:
 *  - cyclic:  Z/mZ, ids are residues in [0, m)
 *  - xor:     ({0,1}^k, xor), the id's binary expansion is the bit vector
 *  - product: G_left x G_right, id = left_id * |G_right| + right_id
 *
 * GroupSpec is an immutable value; copies share child nodes.
 */

#include <memory>
#include <string>
#include <utility>

#include "tsumlab/bigint.hpp"
#include "tsumlab/error.hpp"

namespace tsumlab {

class GroupSpec {
public:
    enum class Kind { Cyclic, Xor, Product };

    static GroupSpec cyclic(const Id& modulus) {
        if (modulus < 1) throw Error(Errc::InvalidParameters, "cyclic modulus must be >= 1");
        GroupSpec g(Kind::Cyclic);
        g.order_ = modulus;
        return g;
    }

    static GroupSpec xor_bits(unsigned width) {
        GroupSpec g(Kind::Xor);
        g.width_ = width;
        g.order_ = Id(1) << width;
        return g;
    }

    static GroupSpec product(GroupSpec left, GroupSpec right) {
        GroupSpec g(Kind::Product);
        g.order_ = left.order() * right.order();
        g.left_ = std::make_shared<const GroupSpec>(std::move(left));
        g.right_ = std::make_shared<const GroupSpec>(std::move(right));
        return g;
    }

    Kind kind() const noexcept { return kind_; }
    const Id& order() const noexcept { return order_; }
    /// Cyclic modulus (equals order()).
    const Id& modulus() const noexcept { return order_; }
    /// Xor bit width.
    unsigned width() const noexcept { return width_; }
    const GroupSpec& left() const { return *left_; }
    const GroupSpec& right() const { return *right_; }

    bool contains(const Id& e) const { return e >= 0 && e < order_; }

    void check(const Id& e) const {
        if (!contains(e)) {
            throw Error(Errc::InvalidElement, "element " + e.str() + " not in " + describe());
        }
    }

    Id identity() const { return 0; }

    Id add(const Id& a, const Id& b) const {
        check(a);
        check(b);
        return add_unchecked(a, b);
    }

    Id negate(const Id& a) const {
        check(a);
        return negate_unchecked(a);
    }

    Id subtract(const Id& a, const Id& b) const {
        check(a);
        check(b);
        return subtract_unchecked(a, b);
    }

    /// Group law without range checks; both operands must already be valid.
    Id add_unchecked(const Id& a, const Id& b) const {
        switch (kind_) {
            case Kind::Cyclic: {
                Id s = a + b;
                if (s >= order_) s -= order_;
                return s;
            }
            case Kind::Xor: return a ^ b;
            case Kind::Product: {
                auto [al, ar] = split(a);
                auto [bl, br] = split(b);
                return combine(left_->add_unchecked(al, bl), right_->add_unchecked(ar, br));
            }
        }
        return 0;
    }

    Id negate_unchecked(const Id& a) const {
        switch (kind_) {
            case Kind::Cyclic: return a == 0 ? Id(0) : Id(order_ - a);
            case Kind::Xor: return a;
            case Kind::Product: {
                auto [l, r] = split(a);
                return combine(left_->negate_unchecked(l), right_->negate_unchecked(r));
            }
        }
        return 0;
    }

    Id subtract_unchecked(const Id& a, const Id& b) const {
        switch (kind_) {
            case Kind::Cyclic: return a >= b ? Id(a - b) : Id(a + order_ - b);
            case Kind::Xor: return a ^ b;
            default: return add_unchecked(a, negate_unchecked(b));
        }
    }

    /// Product only: id of the pair (l, r).
    Id combine(const Id& l, const Id& r) const { return l * right_->order() + r; }

    /// Product only: (left_id, right_id) of a product element.
    std::pair<Id, Id> split(const Id& e) const {
        Id q, r;
        boost::multiprecision::divide_qr(e, right_->order(), q, r);
        return {q, r};
    }

    /// Short text form: "cyclic:5", "xor:3", "(cyclic:2*cyclic:5)".
    std::string describe() const {
        switch (kind_) {
            case Kind::Cyclic: return "cyclic:" + order_.str();
            case Kind::Xor: return "xor:" + std::to_string(width_);
            case Kind::Product: return "(" + left_->describe() + "*" + right_->describe() + ")";
        }
        return "?";
    }

    friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
        if (a.kind_ != b.kind_ || a.order_ != b.order_) return false;
        if (a.kind_ == Kind::Product) return *a.left_ == *b.left_ && *a.right_ == *b.right_;
        return a.width_ == b.width_;
    }

private:
    explicit GroupSpec(Kind k) : kind_(k) {}

    Kind kind_;
    Id order_ = 1;
    unsigned width_ = 0;
    std::shared_ptr<const GroupSpec> left_;
    std::shared_ptr<const GroupSpec> right_;
};

inline Id add(const GroupSpec& g, const Id& a, const Id& b) { return g.add(a, b); }
inline Id negate(const GroupSpec& g, const Id& a) { return g.negate(a); }
inline Id subtract(const GroupSpec& g, const Id& a, const Id& b) { return g.subtract(a, b); }

}  // namespace tsumlab

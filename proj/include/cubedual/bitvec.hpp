#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cubedual {

// Fixed-width bit vector. Backs both ultrafilters (one bit per halfspace
// pair: 0 = plus side, 1 = minus side) and subsets of the 2n side elements.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}

    int size() const { return n_; }

    bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    void set(int i, bool v) {
        uint64_t mask = uint64_t{1} << (i & 63);
        if (v)
            w_[i >> 6] |= mask;
        else
            w_[i >> 6] &= ~mask;
    }

    void flip(int i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }

    int count() const {
        int c = 0;
        for (uint64_t x : w_) c += std::popcount(x);
        return c;
    }

    // |this xor other| -- the symmetric-difference size.
    int count_xor(const BitVec& o) const {
        int c = 0;
        for (size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] ^ o.w_[i]);
        return c;
    }

    bool intersects(const BitVec& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    bool is_subset_of(const BitVec& o) const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    BitVec& operator&=(const BitVec& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }

    BitVec& operator|=(const BitVec& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }

    BitVec& operator^=(const BitVec& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }

    // Remove o's bits: this &= ~o.
    BitVec& subtract(const BitVec& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }
    friend BitVec operator|(BitVec a, const BitVec& b) { return a |= b; }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    bool any() const {
        for (uint64_t x : w_)
            if (x) return true;
        return false;
    }

    bool none() const { return !any(); }

    // Index of the lowest set bit, or -1.
    int first() const {
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i]) return int(i * 64) + std::countr_zero(w_[i]);
        return -1;
    }

    // Next set bit at index > i, or -1.
    int next(int i) const {
        ++i;
        if (i >= n_) return -1;
        size_t word = size_t(i) >> 6;
        uint64_t cur = w_[word] & (~uint64_t{0} << (i & 63));
        while (true) {
            if (cur) return int(word * 64) + std::countr_zero(cur);
            if (++word >= w_.size()) return -1;
            cur = w_[word];
        }
    }

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    // "0110..."; bit i at position i. Used by the graph JSON schema.
    std::string to_string() const {
        std::string s(n_, '0');
        for (int i = 0; i < n_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    static BitVec from_string(const std::string& s) {
        BitVec b(int(s.size()));
        for (size_t i = 0; i < s.size(); ++i)
            if (s[i] == '1') b.set(int(i), true);
        return b;
    }

    size_t hash() const {
        uint64_t h = 1469598103934665603ull;
        for (uint64_t x : w_) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return size_t(h ^ uint64_t(n_));
    }

private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

struct BitVecHash {
    size_t operator()(const BitVec& b) const { return b.hash(); }
};

}  // namespace cubedual

#pragma once

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace pg3 {

/// Dynamic bitset sized at construction. Only provides the operations the
/// incidence code actually uses; the hot path is and_count (popcount of an
/// intersection) over word arrays.
class Bitset {
public:
    Bitset() = default;

    explicit Bitset(std::size_t nbits)
        : size_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return size_; }
    bool empty_domain() const { return size_ == 0; }

    bool test(std::size_t i) const {
        assert(i < size_);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i) {
        assert(i < size_);
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }

    void reset(std::size_t i) {
        assert(i < size_);
        words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    void clear() {
        for (auto& w : words_) w = 0;
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    /// popcount(a & b); both must share the same domain size.
    static std::size_t and_count(const Bitset& a, const Bitset& b) {
        assert(a.size_ == b.size_);
        std::size_t n = 0;
        for (std::size_t i = 0; i < a.words_.size(); ++i)
            n += static_cast<std::size_t>(std::popcount(a.words_[i] & b.words_[i]));
        return n;
    }

    bool is_subset_of(const Bitset& other) const {
        assert(size_ == other.size_);
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    Bitset& operator&=(const Bitset& o) {
        assert(size_ == o.size_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    Bitset& operator|=(const Bitset& o) {
        assert(size_ == o.size_);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    friend bool operator==(const Bitset& a, const Bitset& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

    /// Index of the first set bit, or size() if none.
    std::size_t find_first() const {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w])
                return (w << 6) + static_cast<std::size_t>(std::countr_zero(words_[w]));
        return size_;
    }

    /// First set bit at index > i, or size() if none.
    std::size_t find_next(std::size_t i) const {
        ++i;
        if (i >= size_) return size_;
        std::size_t w = i >> 6;
        std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (i & 63));
        while (true) {
            if (cur) return (w << 6) + static_cast<std::size_t>(std::countr_zero(cur));
            if (++w == words_.size()) return size_;
            cur = words_[w];
        }
    }

    std::vector<std::uint32_t> to_ids() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for (std::size_t i = find_first(); i < size_; i = find_next(i))
            out.push_back(static_cast<std::uint32_t>(i));
        return out;
    }

    /// FNV-1a over size and words; stable across runs.
    std::uint64_t digest() const {
        std::uint64_t h = 1469598103934665603ULL;
        auto mix = [&h](std::uint64_t v) {
            for (int k = 0; k < 8; ++k) {
                h ^= (v >> (8 * k)) & 0xff;
                h *= 1099511628211ULL;
            }
        };
        mix(size_);
        for (auto w : words_) mix(w);
        return h;
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace pg3

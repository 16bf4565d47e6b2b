#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ppmzero {

/// Fixed-size bitset sized at runtime, used for graph neighbourhoods.
class Bitset {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    Bitset() = default;
    explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const noexcept { return n_; }

    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    void set_all() noexcept
    {
        for (auto& w : words_)
            w = ~std::uint64_t{0};
        if (n_ & 63)
            words_.back() &= (std::uint64_t{1} << (n_ & 63)) - 1;
    }

    std::size_t count() const noexcept
    {
        std::size_t c = 0;
        for (auto w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool none() const noexcept
    {
        for (auto w : words_)
            if (w)
                return false;
        return true;
    }

    /// Lowest set index at or after `from`, or npos.
    std::size_t find_next(std::size_t from = 0) const noexcept
    {
        if (from >= n_)
            return npos;
        std::size_t wi = from >> 6;
        std::uint64_t w = words_[wi] & (~std::uint64_t{0} << (from & 63));
        for (;;) {
            if (w)
                return (wi << 6) + static_cast<std::size_t>(std::countr_zero(w));
            if (++wi == words_.size())
                return npos;
            w = words_[wi];
        }
    }

    Bitset& operator&=(const Bitset& o) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= o.words_[i];
        return *this;
    }

    Bitset& operator|=(const Bitset& o) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= o.words_[i];
        return *this;
    }

    /// this &= ~o
    Bitset& subtract(const Bitset& o) noexcept
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] &= ~o.words_[i];
        return *this;
    }

    friend bool operator==(const Bitset&, const Bitset&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace ppmzero

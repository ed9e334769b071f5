#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vpn {

using Name = std::string;

// A tuple of constants. A bare constant is the length-1 tuple.
using Token = std::vector<Name>;

// Token multiplicity in N ∪ {ω}.
class Count
{
public:
    constexpr Count() = default;
    constexpr explicit Count(std::uint64_t n) : value_(n) {}

    static constexpr Count omega()
    {
        Count c;
        c.omega_ = true;
        return c;
    }

    [[nodiscard]] constexpr bool is_omega() const { return omega_; }
    [[nodiscard]] constexpr bool is_zero() const { return !omega_ && value_ == 0; }
    [[nodiscard]] constexpr std::uint64_t value() const { return value_; }

    // ω + a = ω
    [[nodiscard]] Count operator+(Count other) const;
    // ω − a = ω; finite − ω and a − b with b > a underflow.
    [[nodiscard]] Count operator-(Count other) const;

    friend constexpr bool operator==(Count a, Count b)
    {
        return a.omega_ == b.omega_ && (a.omega_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(Count a, Count b)
    {
        if (a.omega_ || b.omega_)
            return a.omega_ <=> b.omega_;
        return a.value_ <=> b.value_;
    }

    [[nodiscard]] std::string to_string() const;

private:
    std::uint64_t value_ = 0;
    bool omega_ = false;
};

class MultisetUnderflow : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Bag of tuple tokens. Entries with count 0 are never stored, so the
// defaulted equality is equality of multisets.
class MSet
{
public:
    using Entries = std::map<Token, Count>;
    using const_iterator = Entries::const_iterator;

    MSet() = default;
    MSet(std::initializer_list<std::pair<const Token, Count>> init);

    static MSet single(Token token, Count n = Count(1));

    void add(const Token& token, Count n = Count(1));
    // Throws MultisetUnderflow if n exceeds the stored count.
    void remove(const Token& token, Count n = Count(1));
    void set(const Token& token, Count n);

    [[nodiscard]] Count count(const Token& token) const;
    [[nodiscard]] bool contains(const Token& token) const { return entries_.count(token) != 0; }
    [[nodiscard]] bool empty() const { return entries_.empty(); }
    [[nodiscard]] std::size_t distinct() const { return entries_.size(); }
    // Σ counts, ω if any count is ω.
    [[nodiscard]] Count total() const;
    [[nodiscard]] bool has_omega() const;

    [[nodiscard]] const_iterator begin() const { return entries_.begin(); }
    [[nodiscard]] const_iterator end() const { return entries_.end(); }
    [[nodiscard]] const Entries& entries() const { return entries_; }

    MSet& operator+=(const MSet& other);
    MSet& operator-=(const MSet& other);

    friend bool operator==(const MSet&, const MSet&) = default;
    friend bool operator<(const MSet& a, const MSet& b) { return a.entries_ < b.entries_; }

private:
    Entries entries_;
};

[[nodiscard]] MSet operator+(MSet a, const MSet& b);
// Throws MultisetUnderflow unless b <= a.
[[nodiscard]] MSet operator-(MSet a, const MSet& b);

// Pointwise a(x) <= b(x), with ω dominating every finite count.
[[nodiscard]] bool leq(const MSet& a, const MSet& b);

} // namespace vpn

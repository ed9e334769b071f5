#include "vpn/multiset.hpp"

namespace vpn {

Count Count::operator+(Count other) const
{
    if (omega_ || other.omega_)
        return omega();
    return Count(value_ + other.value_);
}

Count Count::operator-(Count other) const
{
    if (omega_)
        return omega();
    if (other.omega_ || other.value_ > value_)
        throw MultisetUnderflow("count underflow: " + to_string() + " - " + other.to_string());
    return Count(value_ - other.value_);
}

std::string Count::to_string() const
{
    return omega_ ? std::string("omega") : std::to_string(value_);
}

MSet::MSet(std::initializer_list<std::pair<const Token, Count>> init)
{
    for (const auto& [token, n] : init)
        add(token, n);
}

MSet MSet::single(Token token, Count n)
{
    MSet m;
    m.add(token, n);
    return m;
}

void MSet::add(const Token& token, Count n)
{
    if (n.is_zero())
        return;
    auto it = entries_.find(token);
    if (it == entries_.end())
        entries_.emplace(token, n);
    else
        it->second = it->second + n;
}

void MSet::remove(const Token& token, Count n)
{
    if (n.is_zero())
        return;
    auto it = entries_.find(token);
    if (it == entries_.end())
        throw MultisetUnderflow("count underflow: token absent");
    it->second = it->second - n;
    if (it->second.is_zero())
        entries_.erase(it);
}

void MSet::set(const Token& token, Count n)
{
    if (n.is_zero())
        entries_.erase(token);
    else
        entries_[token] = n;
}

Count MSet::count(const Token& token) const
{
    auto it = entries_.find(token);
    return it == entries_.end() ? Count() : it->second;
}

Count MSet::total() const
{
    Count sum;
    for (const auto& [token, n] : entries_)
        sum = sum + n;
    return sum;
}

bool MSet::has_omega() const
{
    for (const auto& [token, n] : entries_)
        if (n.is_omega())
            return true;
    return false;
}

MSet& MSet::operator+=(const MSet& other)
{
    for (const auto& [token, n] : other.entries_)
        add(token, n);
    return *this;
}

MSet& MSet::operator-=(const MSet& other)
{
    if (!leq(other, *this))
        throw MultisetUnderflow("multiset difference underflows");
    for (const auto& [token, n] : other.entries_)
        remove(token, n);
    return *this;
}

MSet operator+(MSet a, const MSet& b)
{
    a += b;
    return a;
}

MSet operator-(MSet a, const MSet& b)
{
    a -= b;
    return a;
}

bool leq(const MSet& a, const MSet& b)
{
    for (const auto& [token, n] : a)
        if (!(n <= b.count(token)))
            return false;
    return true;
}

} // namespace vpn

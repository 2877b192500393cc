#pragma once

#include "../protocol.hpp"
#include "../randomness.hpp"

#include <cstdint>
#include <random>
#include <span>

namespace qcclab {

/// Halts immediately with fixed outputs; T = 0 on every run.
template <class Input>
class ConstantProtocol {
public:
    using input_type = Input;
    using randomness_type = std::uint64_t;

    ConstantProtocol(Outcome y_a, Outcome y_b) : y_a_(y_a), y_b_(y_b) {}

    RandomnessSpace<std::uint64_t> space() const { return RandomnessSpace<std::uint64_t>::uniform({0}); }
    std::uint64_t sample(std::mt19937_64&) const { return 0; }

    Action step(Party role, const Input&, std::uint64_t, std::span<const Entry>) const {
        return Halt{role == Party::alice ? y_a_ : y_b_};
    }

private:
    Outcome y_a_;
    Outcome y_b_;
};

}  // namespace qcclab

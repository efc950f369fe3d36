#ifndef MANET_RNG_H
#define MANET_RNG_H

#include <cstdint>
#include <initializer_list>
#include <random>

namespace manet {

/// Seeded 64-bit generator. Draws are reproduced bit-for-bit across
/// platforms: mt19937_64 and seed_seq are fully specified, and the real
/// conversions below avoid the implementation-defined std distributions.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed)
        : m_engine(seed)
    {
    }

    Rng(std::initializer_list<std::uint32_t> words)
    {
        std::seed_seq seq(words);
        m_engine.seed(seq);
    }

    std::uint64_t next() { return m_engine(); }

    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(m_engine() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n)
    {
        // rejection sampling keeps the draw unbiased
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do
        {
            v = m_engine();
        } while (v >= limit);
        return v % n;
    }

    bool bernoulli(double p) { return p > 0.0 && uniform01() < p; }

  private:
    std::mt19937_64 m_engine;
};

/// Independent stream derived from a scenario seed.
inline Rng
make_stream(std::uint64_t seed, std::uint32_t stream, std::uint32_t index = 0)
{
    return Rng{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream,
               index};
}

} // namespace manet

#endif

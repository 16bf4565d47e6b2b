// Build the bounded-drift code for k=2, M=65, send every codeword through
// the extreme drift values and decode it back.

#include <iostream>

#include "ppmzero/ppmzero.hpp"

int main()
{
    using namespace ppmzero;

    const Rational gamma(7, 4);
    Codebook code = code_bounded_drift(2, 65, gamma);
    std::cout << "codewords: " << code.size() << ", rate " << rate_bits(code) << " bits\n";

    FastDecoder decoder(code);
    std::size_t errors = 0;
    for (const auto& x : code.codewords()) {
        for (const Rational& t : {Rational(1), gamma}) {
            ChannelRealization r{t, std::vector<Rational>(x.size(), Rational(1))};
            ObservedSignal y = transmit(x, r);
            if (decoder.decode(y, code.spec()) != x)
                ++errors;
        }
    }
    std::cout << "decode errors: " << errors << '\n';

    // the same pair of pulse gaps as seen with T = 3/2
    RunVector x({3, 5}, 65);
    ObservedSignal y = transmit(x, ChannelRealization{Rational(3, 2), {Rational(1), Rational(1)}});
    for (const auto& v : y.exact())
        std::cout << v.to_string() << ' ';
    std::cout << "-> " << decode(y, code, code.spec()) << '\n';
    return errors == 0 ? 0 : 1;
}

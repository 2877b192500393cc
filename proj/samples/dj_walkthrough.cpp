// Walks through the n = 4 pipeline: quantum prediction for one input pair,
// the exact outcome law of the send-all-reply protocol, then the partition
// and one certificate.

#include "qcclab/qcclab.hpp"

#include <iostream>

int main() {
    using namespace qcclab;
    const auto a = SignVector::parse("++--");
    const auto b = SignVector::parse("+-+-");

    const auto rho = maximally_entangled<Rational>(4);
    const auto target = predict_joint_probs(sign_vector_projector(a), sign_vector_projector(b), rho);
    std::cout << "quantum   p_pp=" << to_string(target.pp) << " p_mm=" << to_string(target.mm) << "\n";

    const SendAllReplyProtocol protocol(4);
    const std::size_t cap = default_cap(4);
    const auto law = output_distribution(protocol, a, b, protocol.space(), cap);
    std::cout << "protocol  p_pp=" << to_string(law.pp) << " p_mm=" << to_string(law.mm) << "\n";

    const auto part = reduction::partition_inputs(protocol, 4, 6, cap, true);
    std::cout << "cells     " << part.cells.size() << " (bound " << part.max_cells() << ")\n";

    const auto cert = reduction::build_certificate(a, part, protocol, cap);
    const auto table = reduction::DerandomizationTable::from(part);
    std::cout << "cert      j=" << cert.j << " transcript=" << cert.transcript.dump() << " bits="
              << cert.bit_length(4) << "\n";
    const bool ok = reduction::verify_certificate(Party::alice, a, cert, table, protocol).accept &&
                    reduction::verify_certificate(Party::bob, a, cert, table, protocol).accept;
    std::cout << "accepts   " << (ok ? "yes" : "no") << "\n";
    return ok ? 0 : 1;
}

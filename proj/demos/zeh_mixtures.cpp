// Two ensembles with the same density operator, told apart by the second
// moment of the s_x expectation-value random variable.

#include <iostream>

#include "qmix/qmix.hpp"

int main() {
    using namespace qmix;

    const auto m1 = zeh_mixture_1();  // {|+x>, 1/2; |-x>, 1/2}
    const auto m2 = zeh_mixture_2();  // {|+y>, 1/2; |-y>, 1/2}

    std::cout << "density operators equal: " << std::boolalpha
              << density_equal(m1, m2, 1e-9) << "\n";
    std::cout << "entropy (nats): " << von_neumann_entropy(density_of(m1)) << " vs "
              << von_neumann_entropy(density_of(m2)) << "\n";

    const auto sx = spin_x();
    for (unsigned n = 1; n <= 4; ++n)
        std::cout << "mu_" << n << ":  mixture 1 = " << moment(m1, sx, n)
                  << "   mixture 2 = " << moment(m2, sx, n) << "\n";

    const std::vector<observable> axes{spin_x(), spin_y(), spin_z()};
    if (const auto w = distinguish<double>(m1, m2, axes, 6)) {
        std::cout << "witness: " << w->observable << " at order " << w->order
                  << " (gap " << w->gap << ")\n";
    }
    return 0;
}

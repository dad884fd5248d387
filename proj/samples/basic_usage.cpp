// Recurrence coefficients of |x|^alpha exp(-N[x^2 + s(x^4 - x^2)]) by two routes, their
// large-n expansion, and the exact s-derivative of log D_n.

#include "dfreud/asymptotics.hpp"
#include "dfreud/detasympt.hpp"
#include "dfreud/hankel.hpp"
#include "dfreud/recurrence.hpp"

#include <iostream>

using namespace dfreud;

int main()
{
    const NumericContext ctx(80);
    const WeightParams w = WeightParams::parse("0.5", "1.5", "1");

    // With alpha != 0 the large-n column misses an alpha-dependent correction and stays a few percent off.
    const BetaSequence hk = beta_from_moments(w, 20, ctx);
    const BetaSequence fw = dpi_forward(w, beta1_initial(w, ctx), 20, ctx);
    for (int n : {1, 5, 10, 20}) {
        const auto i = static_cast<std::size_t>(n);
        std::cout << "n=" << n << "  hankel " << hk.betas[i].to_string(25) << "  recursion "
                  << fw.betas[i].to_string(25) << "  large-n " << beta_large_n(n, w, ctx.precision()).to_string(12)
                  << "\n";
    }

    const Real d = logdet_derivative_exact_from(8, hk.betas, w);
    std::cout << "d/ds log D_8 = " << d.to_string(30) << "\n";
    std::cout << "finite diff  = " << logdet_derivative_fd(8, w, ctx).to_string(30) << "\n";
}

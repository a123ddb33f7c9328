#include <iostream>

#include "gamma_channel/gamma_channel.hpp"

using namespace gamma_channel;

int main() {
  const FieldOrder q(2);
  const int n = 4;
  const int m = 4;
  for (const char* model : {"constant:t=0", "constant:t=1", "iid:t=2", "binomial:T=4,p=0.05"}) {
    GammaChannel channel(ChannelParams(q, n, m, build_error_model(model, q, n, m)));
    const CapacityResult res = maximize(channel);
    std::cout << model << ": " << res.capacity_bits << " bits, input ranks";
    for (double p : res.optimal_input.values()) std::cout << ' ' << p;
    std::cout << '\n';
  }
}

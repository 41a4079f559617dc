// Scores a few fixture embeddings of the five-ring dataset, supervised and
// unsupervised.

#include <cstdio>

#include "embedq/embedq.hpp"

int main() {
  using namespace embedq;

  const auto rings = gen_rings(500, 7);
  const auto lifted = lift_2_9(rings.x);

  struct Candidate {
    const char* name;
    DataMatrix embedding;
  };
  const Candidate candidates[] = {
      {"identity", rings.x},
      {"pca(lift)", transform(fit_pca(lifted, 2), lifted)},
      {"random(lift)", transform(fit_random_projection(lifted, 2, 7), lifted)},
      {"shuffled", shuffle_embedding(rings.x, 7)},
  };

  std::printf("%-14s %10s %10s %10s %10s\n", "embedding", "L(sup)", "G(sup)", "L(c=5)", "G(c=5)");
  const auto unsup = unsupervised_assignment(rings.x, Unsupervised{5});
  for (const auto& c : candidates) {
    const auto sup = cmet_score(rings.x, c.embedding, rings.labels);
    const auto uns = cmet_score(rings.x, c.embedding, unsup, Mode::Unsupervised);
    std::printf("%-14s %10.6f %10.6f %10.6f %10.6f\n", c.name, sup.local, sup.global, uns.local, uns.global);
  }
  return 0;
}

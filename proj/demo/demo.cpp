/*
 * Copyright 2026 The ktheta Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Evaluates the degree-3 embedding at a point and its image under the
// generator a, and prints the chordal distance between them together with
// the pulled-back symplectic form there.

#include <iomanip>
#include <iostream>

#include <ktheta/ktheta.hpp>

int main()
{
    using namespace ktheta;

    const int k = 3;
    const KTPoint u{0.3, 0.7, 0.1, 0.45};
    const KTPoint au = act(GroupWord::a(), u);

    const ProjectivePoint p = phi(k, u);
    const ProjectivePoint q = phi(k, au);
    std::cout << std::setprecision(6);
    std::cout << "u      = " << u << "\na.u    = " << au << '\n';
    std::cout << "chordal(phi(u), phi(a.u)) = " << chordal_distance(p, q) << '\n';
    std::cout << "rank d(phi) at u = " << projective_rank(k, u) << '\n';

    const PullbackForm w = fs_pullback(FormSource::phi, k, u);
    std::cout << "pulled-back form:\n" << w.omega.matrix() << '\n';
    std::cout << "Pfaffian = " << pfaffian(w) << '\n';

    for (TorusId id : all_tori) {
        const BasisTorus torus(id, {0.0, 0.0, 0.0, 0.0});
        std::cout << to_string(id) << ": integral " << integrate_over_torus(FormSource::phi, k, torus)
                  << ", c1 " << chern_via_multiplicators(id) << '\n';
    }
}

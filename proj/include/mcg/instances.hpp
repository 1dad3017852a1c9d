#pragma once

#include "mcg/presentations.hpp"

namespace mcg {

// <x0, x1, x2, x3 | x3 x2' x1 x0' x3' x2 x1' x0>
Presentation surface_group();

// Twists a1, b, a2, b1, c{1,2} of the closed genus-2 surface: the braid and
// commutation relators of their intersection pattern and star(1,1,2) written
// as (a1 a1 a2 b)^3 c{1,2}' c{1,2}'.
Presentation genus2_twists();

// Data for the extension of genus2_twists by surface_group with the
// boundary twist c{3,1} central: conjugation rows from the twist actions on
// the surface group, c{1,2} x3 c{1,2}' = x3 x2' x1 x0' c{3,1}, and
// (a1 a1 a2 b)^3 c{1,2}'^2 = x2 x1' x0 c{3,1}.
ExtensionData genus2_boundary_data();
Presentation genus2_boundary_extension();

struct AmalgamInstance {
  Presentation stab;
  AmalgamData data;
  Word t1;  // the twist word t1 stands for
  Word t2;
};

// Genus 3, one boundary: t1 = b2 c{4,5} a4 b2, t2 = b a4 a2 b over
// gervais(3,1,full,lanterns). Y1 is t1^2 = a4'^2 c{4,5}'^2 a3 a5, Y3 is
// t1 t2 t1 t2 t1 = t1^2 t2 t1^2 with t1^2 replaced by its Y1 value.
AmalgamInstance genus3_amalgam();

}  // namespace mcg

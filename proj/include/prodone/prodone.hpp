#pragma once

#include "prodone/acceptance.hpp"
#include "prodone/atoms.hpp"
#include "prodone/cli.hpp"
#include "prodone/dihedral/claim_a.hpp"
#include "prodone/dihedral/closed_forms.hpp"
#include "prodone/dihedral/ground.hpp"
#include "prodone/factorization.hpp"
#include "prodone/group.hpp"
#include "prodone/invariants.hpp"
#include "prodone/probes.hpp"
#include "prodone/product.hpp"
#include "prodone/scan.hpp"
#include "prodone/sequence.hpp"

"""A lattice is not a finite union of lower-rank sublattices; find a point outside all of them."""

from otlck.loglattice import IntegerLattice, lattice_membership, lemma_witness

Z2 = IntegerLattice([[1, 0], [0, 1]])
subs = [IntegerLattice([[1, 0]]), IntegerLattice([[0, 1]]), IntegerLattice([[1, 1]])]
w = lemma_witness(Z2, subs)
print("witness", [int(c) for c in w], "memberships", [lattice_membership(w, s) for s in subs])

L = IntegerLattice([[2, 1, 0], [0, 3, 1], [1, 1, 1]])
subs = [IntegerLattice([[2, 1, 0], [0, 3, 1]]), IntegerLattice([[1, 1, 1]]), IntegerLattice([[3, 5, 2]])]
w = lemma_witness(L, subs)
print("witness", [int(c) for c in w], "in L:", lattice_membership(w, L),
      "in any sublattice span:", any(s.in_rational_span(w) for s in subs))

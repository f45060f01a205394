"""Check the small codes that are known to be perfect, and the Fano plane.

Run with: python3 demos/small_codes.py
"""
from perfcodes.designs import code_strength, figure1, min_h_distance, verify_design
from perfcodes.johnson import Code, DoublyCode, configuration_distribution, verify_perfect, verify_perfect_doubly
from perfcodes.moments import config_recurrence_solve

pair = Code.of(6, 3, [(0, 1, 2), (3, 4, 5)])
v = verify_perfect(pair, 1)
print(f"J(6,3) pair, e=1: {v.status}  ({v.code_size} balls of size {v.sphere_size} cover {v.space_size})")

single = Code.of(5, 2, [(0, 1)])
print(f"J(5,2) single word, e=2: {verify_perfect(single, 2).status}")

doubly = DoublyCode.of(2, 1, 4, 2, [(0, 2, 3), (1, 4, 5)])
print(f"doubly (w1,n1,w2,n2)=(1,2,2,4) pair, e=1: {verify_perfect_doubly(doubly, 1).status}")

fano = figure1()
print(f"Fano plane: lambda={verify_design(fano, 2)} strength={code_strength(fano)} "
      f"min H-distance={min_h_distance(fano)}")

# the configuration recurrence rebuilt from A_3 = 1 matches the counts on the pair
measured = configuration_distribution(pair, block=(0, 1, 2)).counts
solved = config_recurrence_solve(6, 3, 3, {3: 1}).values
print(f"configuration distribution: measured {list(measured)}, recurrence {[int(x) for x in solved]}")

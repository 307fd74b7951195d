"""Solve a small parity game and check the strategies it returns."""
from treealg.games import EVEN, ODD, ParityGame, solve, verify_strategy

#  s (Odd, 3) -> x (Even, 1) | y (Even, 2);  x -> s;  y -> y, s
game = ParityGame({"s": ODD, "x": EVEN, "y": EVEN}, {"s": 3, "x": 1, "y": 2},
                  {"s": ["x", "y"], "x": ["s"], "y": ["y", "s"]})
sol = solve(game)
print("Even wins", sorted(sol.even_region), "Odd wins", sorted(sol.odd_region))
print("Even plays", sol.strategies[EVEN], "Odd plays", sol.strategies[ODD])
print("strategies verified:", verify_strategy(game, sol))

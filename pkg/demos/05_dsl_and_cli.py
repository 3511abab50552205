"""
Expressions and the command line
================================

Sets and points can be written as text.  The same expressions are accepted
by the ``caratheodory`` command.
"""

import subprocess
import sys

from caratheodory import eval_element, eval_point, measure_completion, parse, to_text

e = parse("[0,1/2) | ![1/4,3/4) & [0,1)")
print(e)
print(to_text(e), eval_element(e))

# builtin families turn an expression into a completion point
print(measure_completion(eval_point("fatcantor \\ [0,1/2)"), 16))

# finite weighted algebras use atom sets
from caratheodory.set_algebra import parse_config

print(eval_element("{a0} | !{a0,a1}", parse_config("finite:1/2,1/4,1/4")))

for args in (["eval", "[0,1/2) | [1/4,3/4)"], ["dist", "[0,1/2)", "[1/4,3/4)"], ["measure", "fatcantor", "--depth", "20"],
             ["verify", "isometry", "--trials", "5"]):
    out = subprocess.run([sys.executable, "-m", "caratheodory", *args], capture_output=True, text=True)
    print("$ caratheodory", " ".join(args), "->", out.stdout.strip(), f"(exit {out.returncode})")

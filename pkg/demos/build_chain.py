"""A ten-file build where each output depends on its source and the previous
output. Editing a source late in the chain should rebuild very little.

    python3 demos/build_chain.py
"""

from sfm import vfi
from sfm.bench import bench_eval_counts
from sfm.generators import make_chain

N = 10
chain = make_chain(N)
clean = vfi(chain, {f"S{i}": 0 for i in range(N)}).world

edits = [{f"S{k}": 1} for k in range(N)]
table = bench_eval_counts(chain, clean, edits)

print(f"{'edit':<10}{'full':>6}{'incr':>6}{'saved':>7}")
for row in table.rows:
    print(f"{str(row.tweak):<10}{row.vfi_evals:>6}{row.cfi_evals:>6}{row.saved:>7}")
t = table.totals
print(f"{'total':<10}{t['vfi']:>6}{t['cfi']:>6}{t['saved']:>7}")

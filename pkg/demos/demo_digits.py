"""
Handwritten digits: predict the lower half from the upper half
==============================================================

Each optdigits image is split into two 4 x 8 halves. The upper half is
the predictor and the lower half the response, compared through Isomap
distances. Two kernel predictors are enough to separate the classes
0, 8 and 9 visually.

Run with the paths of the UCI ``optdigits.tra`` and ``optdigits.tes``
files. Without arguments the copy of the test file bundled with
scikit-learn is used for both halves of the pipeline.
"""

# %%

import gzip
import sys
import tempfile
from pathlib import Path

from frechet_sdr.cli import main

if len(sys.argv) == 3:
    train, test = sys.argv[1:]
else:
    import sklearn.datasets

    src = Path(sklearn.datasets.__file__).parent / "data" / "digits.csv.gz"
    test = Path(tempfile.mkdtemp()) / "optdigits.tes"
    test.write_bytes(gzip.open(src).read())
    train = test

out = Path(tempfile.mkdtemp()) / "digits"
main(["digits", "--train", str(train), "--test", str(test), "--classes", "0,8,9",
      "--method", "kwire", "--metric", "isomap", "--out", str(out)])
print("outputs in", out)
for f in sorted(out.iterdir()):
    print("  ", f.name)

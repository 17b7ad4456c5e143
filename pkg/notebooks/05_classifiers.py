# Four classifiers on a synthetic five-source dataset
#
# Run with:  python notebooks/05_classifiers.py

import numpy as np

from benford_forensics.learn import (
    SplitConfig,
    evaluate,
    stratified_split,
    train_cnn,
    train_decision_tree,
    train_logistic_regression,
    train_naive_bayes,
)
from benford_forensics.synthetic import make_synthetic_dataset

# 80/80/80/80/48 rows in five Gaussian clusters, 70/30 stratified split.
ds = make_synthetic_dataset(seed=42)
train, test = stratified_split(ds, SplitConfig(train_fraction=0.7, seed=42))
print(f"train {len(train)} rows {np.bincount(train.y).tolist()}, "
      f"test {len(test)} rows {np.bincount(test.y).tolist()}")

models = {
    "Naive Bayes": train_naive_bayes(train),
    "Decision Tree": train_decision_tree(train),
    "Logistic Regression": train_logistic_regression(train),
    "CNN": train_cnn(train, seed=42, validation=test),
}

for name, model in models.items():
    rep = evaluate(model, test)
    print(f"\n*** {name.upper()} ***")
    print(f"Accuracy: {100 * rep.accuracy:.2f}%  precision {rep.precision:.2f}  "
          f"recall {rep.recall:.2f}  F1 {rep.f1:.2f}")
    print(rep.confusion)

cnn = models["CNN"]
print("\nCNN training loss every 25 epochs:")
for e in range(0, len(cnn.loss_curve), 25):
    print(f"  epoch {e + 1:3d}: loss {cnn.loss_curve[e]:.4f}  acc {cnn.accuracy_curve[e]:.3f}  "
          f"val loss {cnn.val_loss_curve[e]:.4f}")

# A harder version: clusters only 2 sigma apart per axis.
hard = make_synthetic_dataset(seed=42, separation=2.0)
tr, te = stratified_split(hard, SplitConfig(0.7, 42))
print("\nat 2-sigma separation:")
for name, fn in (("nb", train_naive_bayes), ("tree", train_decision_tree),
                 ("logreg", train_logistic_regression), ("cnn", train_cnn)):
    print(f"  {name:>6}: {evaluate(fn(tr), te).accuracy:.4f}")

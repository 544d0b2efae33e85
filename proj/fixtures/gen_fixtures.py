# Regenerates the synthetic fixtures. Output is deterministic.
import json
import numpy as np

rng = np.random.default_rng(20240601)

# 8x8 stroke templates, 1 = ink
T = {
    5: ["011111", "010000", "011110", "000001", "000001", "011110"],
    0: ["001100", "010010", "010010", "010010", "010010", "001100"],
    1: ["000100", "001100", "000100", "000100", "000100", "001110"],
}


def sample(label):
    img = np.zeros((8, 8))
    t = np.array([[c == "1" for c in r] for r in T[label]], dtype=float)
    dx, dy = rng.integers(0, 3, size=2)
    img[dy : 6 + dy, dx : 6 + dx] = t * rng.uniform(10, 16)
    img += rng.uniform(0, 3, size=(8, 8)) * (rng.random((8, 8)) < 0.2)
    return np.clip(np.rint(img), 0, 16).astype(int).ravel()


rows = [(5, sample(5)) for _ in range(60)] + [(0, sample(0)) for _ in range(20)] + [(1, sample(1)) for _ in range(20)]
order = rng.permutation(len(rows))
with open("optdigits_small.csv", "w") as f:
    for i in order:
        lab, px = rows[i]
        f.write(",".join(str(v) for v in px) + f",{lab}\n")


def r(shape, scale=1.0):
    return (rng.normal(size=shape) * scale).round(6).tolist()


inst = {
    "S": r((4, 4)), "W_q": r((4, 4)), "W_k": r((4, 4)), "W_v": r((4, 4)),
    "M_1": r((8, 4)), "M_2": r((4, 8)), "b_1": r(8), "b_2": r(4),
    "j": 2, "mode": "exact", "epsilon": 1e-6, "masked": False,
}
json.dump(inst, open("transformer_instance.json", "w"), indent=2)

cat = {
    "S": [[1, 0, 1, 0], [0, 1, 1, 1], [1, 1, 0, 1]],
    "W_q": [[0.2, 0.4, 0.6, 0.8], [0.1, 0.3, 0.5, 0.7], [0.9, 0.8, 0.7, 0.6], [0.5, 0.4, 0.3, 0.2]],
    "W_k": [[0.1, 0.3, 0.5, 0.7], [0.6, 0.4, 0.2, 0.1], [0.8, 0.9, 0.7, 0.6], [0.2, 0.1, 0.3, 0.4]],
    "W_v": [[0.3, 0.5, 0.7, 0.9], [0.6, 0.4, 0.2, 0.1], [0.8, 0.9, 0.7, 0.6], [0.5, 0.4, 0.3, 0.2]],
    "M_1": np.eye(4).tolist(), "M_2": np.eye(4).tolist(), "b_1": [0] * 4, "b_2": [0] * 4,
    "j": 3, "mode": "exact", "epsilon": 1e-6, "masked": False,
    "expected_attention_weights": [[0.324, 0.467, 0.209], [0.305, 0.515, 0.180], [0.346, 0.432, 0.222]],
    "expected_output": [[1.536, 1.519, 1.265, 1.157], [1.566, 1.536, 1.261, 1.137], [1.512, 1.507, 1.269, 1.174]],
    "alpha0": 2.0,
}
json.dump(cat, open("cat_sleeps.json", "w"), indent=2)

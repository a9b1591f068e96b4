"""Compare the compiled and numpy kernels on the Monte Carlo hot paths.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

from specshare.mc_oracle import _backend


def cases():
    yield "detector_count  (2e5 trials x 100 samples)", "detector_count", (7, 1, 0, 200_000, 100, 0.7, 125.0)
    yield "frame_counts_fast (1e7 frames)", "frame_counts_fast", (7, 0, 10_000_000, 0.3, 0.9, 0.015)
    yield "frame_counts_sample (1e6 frames x 9 samples)", "frame_counts_sample", (7, 0, 1_000_000, 0.3, 9, 2.2, 20.0)


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    repeat = ap.parse_args().repeat
    backends = {name: _backend.load(name)[1] for name in _backend.available()}
    if "compiled" not in backends:
        print("compiled extension not built; timing the python kernels only")
    print(f"{'kernel':48s} " + " ".join(f"{n:>10s}" for n in backends) + "   speedup  match")
    for label, name, args in cases():
        times, outs = [], []
        for mod in backends.values():
            dt, out = best_of(getattr(mod, name), args, repeat)
            times.append(dt)
            outs.append(out)
        speed = f"{times[-1] / times[0]:8.2f}x" if len(times) == 2 else "       -"
        match = all(o == outs[0] for o in outs)
        print(f"{label:48s} " + " ".join(f"{t:9.3f}s" for t in times) + f"  {speed}  {match}")


if __name__ == "__main__":
    main()

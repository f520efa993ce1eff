"""Search kernels: the compiled extension when built, else the pure-Python one."""
try:
    from ._dfs import dfs_longest as _dfs_compiled
    BACKEND = "cython"
except ImportError:  # extension not built
    _dfs_compiled = None
    BACKEND = "python"

from ._dfs_py import dfs_longest as dfs_longest_py


def run_dfs(lattice, exhaustive=False, initial_best=-1, backend=None, start=None, allowed0=None):
    """Dispatch to a kernel. ``backend`` is None (best available), "cython" or "python"."""
    backend = backend or BACKEND
    start = lattice.start if start is None else start
    if backend == "cython":
        if _dfs_compiled is None:
            raise ImportError("compiled kernel not available")
        p = lattice.packed()
        best, path, nodes = _dfs_compiled(
            p["succ_ptr"], p["succ_idx"], p["compat"], p["above"], p["rem_bound"],
            start, lattice.target, exhaustive, initial_best,
            None if allowed0 is None else lattice.pack_row(allowed0),
        )
        return best, list(path), nodes
    return dfs_longest_py(
        lattice.succ, lattice.compat, lattice.above, lattice.rem_bound,
        start, lattice.target, exhaustive, initial_best, allowed0,
    )

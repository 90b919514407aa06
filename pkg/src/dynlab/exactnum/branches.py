"""Driver for dynamic evaluation: rerun a computation on every split branch."""

from __future__ import annotations

from ..errors import SplitRequired, TowerBudgetExceeded


def rebuild(ctx, old, new):
    """Rebuild the tower of ``ctx`` with ``old`` replaced by its child ``new``."""
    if ctx is old:
        return new
    if ctx.base is None:
        raise ValueError("context not found in tower")
    return ctx.rebase(rebuild(ctx.base, old, new))


def _in_tower(ctx, target):
    while ctx is not None:
        if ctx is target:
            return True
        ctx = ctx.base
    return False


def split_branches(fn, ctx, max_branches=64):
    """Evaluate ``fn(ctx)`` over every branch of the splitting tree.

    Returns ``[(branch_ctx, value), ...]``.  Whenever ``fn`` raises
    ``SplitRequired`` for a context in the tower of the current branch, the
    branch is replaced by the two children (rebuilt up to the top of the tower)
    and both are retried.
    """
    pending = [ctx]
    done = []
    while pending:
        c = pending.pop(0)
        try:
            done.append((c, fn(c)))
        except SplitRequired as e:
            if not _in_tower(c, e.context):
                raise
            kids = [rebuild(c, e.context, k) for k in e.children()]
            pending = kids + pending
            if len(done) + len(pending) > max_branches:
                raise TowerBudgetExceeded(f"more than {max_branches} split branches")
    return done

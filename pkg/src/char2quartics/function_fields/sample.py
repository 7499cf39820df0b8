"""Random valid models, for property tests and the CLI's ``--random`` option."""
from __future__ import annotations

import random

from ..algebra import BaseField, MPoly, RatFunc
from ..errors import PreconditionViolated
from .model import VARIANTS, FunctionFieldModel
from .validate import validate


def random_element(K: BaseField, rng: random.Random, degree: int = 3,
                   rational: bool = True, nonzero: bool = False) -> RatFunc:
    """Random n/d with deg n <= degree and (optionally) deg d <= 1, d monic."""
    q = 1 << K.F.m
    monos = [e for e in _exponents(K.r, degree)]
    while True:
        num = MPoly(K.F, K.r, {e: c for e in monos if (c := rng.randrange(q))})
        den = MPoly.const(K.F, K.r, 1)
        if rational and K.r and rng.random() < 0.3:
            i = rng.randrange(K.r)
            terms = {tuple(1 if j == i else 0 for j in range(K.r)): 1}
            c = rng.randrange(q)
            if c:
                terms[(0,) * K.r] = c
            den = MPoly(K.F, K.r, terms)
        if nonzero and num.is_zero():
            continue
        return RatFunc(K, num, den)


def _exponents(r, degree):
    if r == 0:
        yield ()
        return
    for d in range(degree + 1):
        for head in range(d, -1, -1):
            for rest in _exponents_exact(r - 1, d - head):
                yield (head,) + rest


def _exponents_exact(r, d):
    if r == 0:
        if d == 0:
            yield ()
        return
    for head in range(d, -1, -1):
        for rest in _exponents_exact(r - 1, d - head):
            yield (head,) + rest


def random_model(variant: str, K: BaseField, rng: random.Random, degree: int = 3,
                 tries: int = 1000) -> FunctionFieldModel:
    """Rejection-sample parameters until the model passes ``validate``."""
    names = VARIANTS[variant]
    if variant == "QE-ii" and K.r < 2:
        # K^2 + K^2*a2 = K when K has a single variable, so b2 has nowhere to live
        raise PreconditionViolated("QE-ii needs at least two base variables")
    for _ in range(tries):
        params = {n: random_element(K, rng, degree) for n in names}
        model = FunctionFieldModel.make(variant, K, **params)
        try:
            validate(model)
        except PreconditionViolated:
            continue
        return model
    raise PreconditionViolated(f"no valid {variant} model found in {tries} draws")

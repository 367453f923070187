from typing import Callable, Iterable, Iterator, List, Optional, Tuple, TypeVar

from joblib import Parallel, delayed

T = TypeVar("T")
R = TypeVar("R")


def _rounds(items: Iterable[T], size: int) -> Iterator[List[T]]:
    batch: List[T] = []
    for item in items:
        batch.append(item)
        if len(batch) == size:
            yield batch
            batch = []
    if batch:
        yield batch


def first_hit(
    fn: Callable[[T], Optional[R]],
    items: Iterable[T],
    threads: int = 1,
) -> Optional[Tuple[int, R]]:
    """
    Primer resultado no nulo de `fn` en el orden de `items`.

    Con varios workers los items se despachan por rondas y se corta al
    terminar la primera ronda con algún resultado; el ganador es siempre el
    de menor posición, así que el resultado no depende de `threads`.
    """
    if threads <= 1:
        for index, item in enumerate(items):
            result = fn(item)
            if result is not None:
                return index, result
        return None

    offset = 0
    with Parallel(n_jobs=threads, prefer="threads") as parallel:
        for batch in _rounds(items, threads * 4):
            results = parallel(delayed(fn)(item) for item in batch)
            for position, result in enumerate(results):
                if result is not None:
                    return offset + position, result
            offset += len(batch)
    return None

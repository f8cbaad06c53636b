# File name: kakeya_utils.py

"""Shared infrastructure for the circular-arc Kakeya toolkit."""

import logging
import os
import tempfile
from functools import wraps
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Set, Type, TypeVar, Union, cast

T = TypeVar("T")
S = TypeVar("S")

#: Environment variable naming the number of worker threads used for sampling.
WORKERS_ENVIRONMENT_VARIABLE = "KAKEYA_WORKERS"


def frozen(cls: Type[T]) -> Type[T]:
    """A class decorator that makes instances read-only once `__init__` returns.

    Parameters:
        cls: class to modify.

    Returns:
        The given class, whose instances reject attribute assignment and
        deletion outside of their own initializer.
    """
    original_init = cls.__init__
    original_setattr = cls.__setattr__
    original_delattr = cls.__delattr__
    initializing: Set[int] = set()

    @wraps(cls.__setattr__)
    def guarded_setattr(self, name, value):
        if id(self) not in initializing:
            raise AttributeError(f"{cls.__name__} is immutable; cannot set '{name}'")
        original_setattr(self, name, value)

    @wraps(cls.__delattr__)
    def guarded_delattr(self, name):
        if id(self) not in initializing:
            raise AttributeError(f"{cls.__name__} is immutable; cannot delete '{name}'")
        original_delattr(self, name)

    @wraps(cls.__init__)
    def tracked_init(self, *args, **kwargs):
        outermost = id(self) not in initializing
        initializing.add(id(self))
        try:
            original_init(self, *args, **kwargs)
        finally:
            if outermost:
                initializing.discard(id(self))

    setattr(cls, "__setattr__", guarded_setattr)
    setattr(cls, "__delattr__", guarded_delattr)
    setattr(cls, "__init__", tracked_init)
    return cls


class frozendict(Dict[Any, Any]):
    """A `dict` that refuses modification after construction."""

    def __init__(self, *args, **kwargs):
        super().update(dict(*args, **kwargs))

    def update(self, *args, **kwargs):
        raise TypeError("frozendict is immutable")

    def __hash__(self) -> int:
        return hash(tuple(sorted((repr(key), repr(value)) for key, value in self.items())))

    __delattr__ = __delitem__ = __setattr__ = __setitem__ = clear = pop = popitem = setdefault = cast(
        Callable[..., Any], update
    )


def memoized_parameterless_method(method: Callable[[T], S]) -> Callable[[T], S]:
    """A method decorator for parameterless methods of immutable classes that
    caches the first computed value on the instance.

    Parameters:
        method: method to modify.

    Returns:
        The given method, modified so that its value is computed once per
        instance.
    """
    cache_name = "_memo_" + method.__name__

    @wraps(method)
    def wrapper(obj):
        try:
            return obj.__dict__[cache_name]
        except KeyError:
            value = method(obj)
            obj.__dict__[cache_name] = value
            return value

    return wrapper


def worker_count(default: Optional[int] = None) -> int:
    """Resolves the number of sampling workers.

    Parameters:
        default: value used when the environment does not name a count;
            ``None`` means the number of available processors.

    Returns:
        A positive worker count.
    """
    value = os.environ.get(WORKERS_ENVIRONMENT_VARIABLE)
    if value:
        count = int(value)
        assert count > 0, f"{WORKERS_ENVIRONMENT_VARIABLE} must be positive"
        return count
    if default is not None:
        return default
    return os.cpu_count() or 1


def atomic_write_text(path: Union[str, Path], text: str) -> Path:
    """Writes text to a file through a temporary sibling and a rename, so that
    readers never observe a partially written artifact.

    Parameters:
        path: destination file.
        text: content to write.

    Returns:
        The destination path.
    """
    destination = Path(path)
    destination.parent.mkdir(parents=True, exist_ok=True)
    handle, temporary = tempfile.mkstemp(prefix="." + destination.name, dir=destination.parent)
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as stream:
            stream.write(text)
        os.replace(temporary, destination)
    except BaseException:
        if os.path.exists(temporary):
            os.remove(temporary)
        raise
    return destination


def configure_logging(verbosity: int = 0) -> None:
    """Installs a single stream handler on the root logger.

    Parameters:
        verbosity: 0 for warnings, 1 for info, 2 or more for debug output.
    """
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter("%(asctime)s %(levelname)s %(name)s: %(message)s"))
    root.addHandler(handler)
    root.setLevel(level)

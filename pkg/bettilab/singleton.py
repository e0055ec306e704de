from typing import Any


class Singleton(type):
    """Metaclass keeping a single instance per class for the lifetime of the process."""

    _instances: dict[type, Any] = {}

    def __call__(cls, *args: Any, **kwargs: Any) -> Any:
        if cls not in Singleton._instances:
            Singleton._instances[cls] = super().__call__(*args, **kwargs)
        return Singleton._instances[cls]

    def forget(cls) -> None:
        """Drop the cached instance, so that the next call constructs a fresh one."""
        Singleton._instances.pop(cls, None)

from typing import Any


class SingletonMeta(type):
    """
    Metaclass keeping one instance per class.

    `drop_instance` forgets it again, so tests and repeated launches in
    one process start from a fresh Config.
    """

    _instances: dict[type, Any] = {}

    def __call__(cls, *args, **kwargs):
        if cls not in SingletonMeta._instances:
            SingletonMeta._instances[cls] = super().__call__(*args, **kwargs)
        return SingletonMeta._instances[cls]

    def drop_instance(cls) -> None:
        SingletonMeta._instances.pop(cls, None)

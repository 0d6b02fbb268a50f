import threading


class Singleton(type):
    """
    Metaclass that hands out one shared instance per class. The first
    call constructs the instance, later calls return it and ignore their
    arguments. Construction is guarded by a lock.

    Usage:
        class Configuration(metaclass=Singleton):
            ...
    """
    _instances = {}
    _lock = threading.Lock()

    def __call__(cls, *args, **kwargs):
        with Singleton._lock:
            if cls not in cls._instances:
                cls._instances[cls] = \
                    super(Singleton, cls).__call__(*args, **kwargs)
        return cls._instances[cls]

from .pool import THREADS_ENV, Outcome, TaskRunner, thread_limit

__all__ = ["THREADS_ENV", "Outcome", "TaskRunner", "thread_limit"]

"""
Log Context Manager
Provides run tracing for command invocations
"""
import uuid
from contextvars import ContextVar
from typing import Any, Dict, Optional
import logging

logger = logging.getLogger(__name__)

run_context: ContextVar[Dict[str, Any]] = ContextVar("run_context", default={})

# Context variables
_run_id: ContextVar[Optional[str]] = ContextVar("run_id", default=None)


class LogContext:
    """Log Context Manager"""

    @staticmethod
    def generate_run_id() -> str:
        """Generate unique run ID"""
        return uuid.uuid4().hex[:12]

    @staticmethod
    def set_run_id(run_id: str = None) -> str:
        """Set run ID"""
        if run_id is None:
            run_id = LogContext.generate_run_id()
        _run_id.set(run_id)
        LogContext.set_context("run_id", run_id)
        return run_id

    @staticmethod
    def get_run_id() -> Optional[str]:
        """Get current run ID"""
        return _run_id.get()

    @staticmethod
    def set_context(key: str, value: Any):
        """Set context information"""
        ctx = dict(run_context.get() or {})
        ctx[key] = value
        run_context.set(ctx)

    @staticmethod
    def get_context(key: str, default: Any = None) -> Any:
        """Get context information"""
        ctx = run_context.get()
        if ctx is None:
            return default
        return ctx.get(key, default)

    @staticmethod
    def update_context(**kwargs):
        """Batch update context information"""
        ctx = dict(run_context.get() or {})
        ctx.update(kwargs)
        run_context.set(ctx)

    @staticmethod
    def snapshot() -> Dict[str, Any]:
        """Copy of the current context"""
        return dict(run_context.get() or {})

    @staticmethod
    def get_logger(name: str = None):
        """Get logger with context"""
        # Lazy import to avoid circular imports
        from log.log import get_logger

        return get_logger(name or __name__, **LogContext.snapshot())

    @staticmethod
    def clear():
        """Clear context"""
        _run_id.set(None)
        run_context.set({})


class RunLogContext:
    """Invocation-level log context manager"""

    def __init__(self, run_id: Optional[str] = None, **kwargs):
        self.run_id = run_id
        self.context_data = kwargs
        self.old_context = None
        self.old_run_id = None

    def __enter__(self):
        self.old_context = LogContext.snapshot()
        self.old_run_id = _run_id.get()

        self.run_id = LogContext.set_run_id(self.run_id)
        LogContext.update_context(**self.context_data)
        logger.debug(f"Entered run context {self.run_id}")
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        run_context.set(self.old_context)
        _run_id.set(self.old_run_id)
        return False

"""translab: a desk-scale code-translation training lab.

Subpackages/modules:

* ``minilang``  -- the built-in toy language pair (lexers, checker with
  longest-valid-prefix diagnostics, interpreter, generator, gold transpiler)
* ``kwtok``     -- keyword-aware subword tokenizer
* ``symexec``   -- basis-path unit-test generation and suite execution
* ``feedback``  -- compiler/test-based reward kernels and compile backends
* ``metrics``   -- translation-quality metrics and baseline rewards
* ``policy``    -- trainable grammar translation policies with LoRA adapters
* ``training``  -- SFT + PPO interleaved training loop
* ``cli``       -- batch entry points
"""

__version__ = "0.1.0"

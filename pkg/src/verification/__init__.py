# Oracle-vs-closed-form verification harness

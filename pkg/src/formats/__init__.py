# 设计文件读写模块 